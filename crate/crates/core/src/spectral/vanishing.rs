//! Scripted vanishing chains: each scenario replays a sequence of window
//! checks (cotensor shapes, freeness, doubling, guarded socle scans) over a
//! ladder of degree windows.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::comodule::{Comodule, Side};
use crate::error::{Error, Result};
use crate::graded::{Degree, DegreeWindow};
use crate::homalg::{doubling_regrade_check, socle_scan_with_table, FDAlgebra, SocleReport};
use crate::milnor::{generator_degree, MilnorMonomial, MilnorProductTable, Sq};
use crate::subquot::{
    convolve, cotensor, subalgebra_basis, subhopf_witness, verify_freeness, Cap, Profile, QuotientHopf,
};

/// Homological range used by the doubling step.
pub const SCENARIO_MAX_S: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioId {
    HBp,
    MspBp,
    YnMsp,
    YnYnext,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 4] = [ScenarioId::HBp, ScenarioId::MspBp, ScenarioId::YnMsp, ScenarioId::YnYnext];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioId::HBp => "H_BP",
            ScenarioId::MspBp => "MSP_BP",
            ScenarioId::YnMsp => "YN_MSP",
            ScenarioId::YnYnext => "YN_YNEXT",
        }
    }

    fn takes_n(&self) -> bool {
        matches!(self, ScenarioId::YnMsp | ScenarioId::YnYnext)
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scenario {s}")))
    }
}

/// A scenario with its window ladder. `n` is used by `YN_MSP` and
/// `YN_YNEXT` and must be at least 1 there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingScenario {
    pub id: ScenarioId,
    pub n: usize,
    pub windows: Vec<DegreeWindow>,
}

impl VanishingScenario {
    pub fn new(id: ScenarioId, n: usize, windows: Vec<DegreeWindow>) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::Precondition(String::from("empty window ladder")));
        }
        if let Some(w) = windows.iter().find(|w| w.guard() == 0) {
            return Err(Error::GuardTooSmall { guard: w.guard(), operation_degree: 1 });
        }
        if id.takes_n() && n == 0 {
            return Err(Error::Precondition(format!("{id} needs n >= 1")));
        }
        Ok(VanishingScenario { id, n: if id.takes_n() { n } else { 0 }, windows })
    }
}

/// One executed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub anchor: String,
    pub window: DegreeWindow,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioReport {
    pub scenario: VanishingScenario,
    pub checks: Vec<CheckOutcome>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The check that aborted the scenario.
    pub fn failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {} n={}\n", self.scenario.id, self.scenario.n);
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}/{} {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.window.max_degree(),
                c.window.guard(),
                c.anchor,
                c.detail
            ));
        }
        out
    }
}

/// Runs every check of the scenario window by window, stopping at the first
/// failure.
pub fn run_vanishing_chain(sc: &VanishingScenario) -> Result<ScenarioReport> {
    let mut report = ScenarioReport { scenario: sc.clone(), checks: Vec::new() };
    for &w in &sc.windows {
        let table = MilnorProductTable::new(w.max_degree());
        let steps: Vec<Step> = match sc.id {
            ScenarioId::HBp => vec![Step::EvenSquares, Step::Socle(primitives(w))],
            ScenarioId::MspBp => vec![
                Step::Freeness(Profile::a_power(1), Profile::full()),
                Step::Freeness(Profile::a_power(2), Profile::a_power(1)),
                Step::Socle(primitives(w)),
            ],
            ScenarioId::YnMsp => vec![
                Step::SubalgebraCotensor(Profile::p_power(sc.n, 2)),
                Step::QuotientConvolution(sc.n),
                Step::Freeness(Profile::p_power(sc.n, 2), Profile::a_power(2)),
            ],
            ScenarioId::YnYnext => vec![
                Step::Doubling(sc.n),
                Step::Freeness(Profile::p(sc.n), Profile::p(sc.n + 1)),
                Step::Socle(column_powers(sc.n + 1, w)),
            ],
        };
        for step in steps {
            let outcome = step.run(w, &table)?;
            let ok = outcome.passed;
            report.checks.push(outcome);
            if !ok {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// `Q_0, Q_1, ...` of degree below the guard.
fn primitives(w: DegreeWindow) -> Vec<Sq> {
    column_powers_at(w, |i| {
        let mut r = vec![0; i + 1];
        r[i] = 1;
        Sq::new(r)
    })
}

/// `Sq(0, ..., 0, 2^j)` with the entry in position `i` (1-based), of degree
/// below the guard.
fn column_powers(i: usize, w: DegreeWindow) -> Vec<Sq> {
    column_powers_at(w, |j| {
        let mut r = vec![0; i];
        r[i - 1] = 1 << j;
        Sq::new(r)
    })
}

fn column_powers_at(w: DegreeWindow, make: impl Fn(usize) -> Sq) -> Vec<Sq> {
    (0..).map(make).take_while(|q| q.degree() < w.guard()).collect()
}

enum Step {
    EvenSquares,
    Socle(Vec<Sq>),
    Freeness(Profile, Profile),
    SubalgebraCotensor(Profile),
    QuotientConvolution(usize),
    Doubling(usize),
}

fn first_difference(a: &[usize], b: &[usize]) -> Option<usize> {
    (0..a.len().max(b.len())).find(|&d| a.get(d) != b.get(d))
}

fn dims_detail(label: &str, got: &[usize], want: &[usize]) -> (bool, String) {
    match first_difference(got, want) {
        None => (true, format!("{label} agree through degree {}", got.len().saturating_sub(1))),
        Some(d) => (
            false,
            format!("{label} differ in degree {d}: {} vs {}", got.get(d).unwrap_or(&0), want.get(d).unwrap_or(&0)),
        ),
    }
}

/// `A_* box_C F2` over the quotient `C = A_* // B_*`.
fn cotensor_dims(c: &QuotientHopf, max: Degree) -> Result<Vec<usize>> {
    let a = Comodule::regular(&QuotientHopf::dual_steenrod(), Side::Right, max);
    let k = Comodule::trivial(Side::Left, max);
    Ok(cotensor(&a, c, &k, max)?.dims())
}

fn socle_detail(gens: &[Sq], rep: &SocleReport) -> String {
    let names: Vec<String> = gens.iter().map(ToString::to_string).collect();
    match &rep.witness {
        None => format!("zero through degree {} under {}", rep.window.asserted_max(), names.join(", ")),
        Some((d, x)) => format!("nonzero in degree {d}, witness {x}, under {}", names.join(", ")),
    }
}

impl Step {
    fn run(&self, w: DegreeWindow, table: &MilnorProductTable) -> Result<CheckOutcome> {
        let max = w.max_degree();
        let (anchor, passed, detail) = match self {
            Step::EvenSquares => {
                let got = cotensor_dims(&QuotientHopf::e(), max)?;
                let want: Vec<usize> = (0..=max)
                    .map(|d| if d % 2 == 0 { MilnorMonomial::basis(d / 2).len() } else { 0 })
                    .collect();
                let (ok, detail) = dims_detail("cotensor and even-squares dims", &got, &want);
                (String::from("cotensor over E has even-squares shape"), ok, detail)
            }
            Step::Socle(gens) => {
                let rep = socle_scan_with_table(table, gens, w)?;
                (String::from("guarded socle scan is zero"), rep.is_zero(), socle_detail(gens, &rep))
            }
            Step::Freeness(sub, amb) => {
                let rep = verify_freeness(sub, amb, max)?;
                let detail = match rep.first_mismatch {
                    None => format!("{} free generators through degree {max}", rep.generators.iter().map(Vec::len).sum::<usize>()),
                    Some(d) => format!("freeness fails in degree {d}"),
                };
                (format!("{amb} is free over {sub}"), rep.passed(), detail)
            }
            Step::SubalgebraCotensor(p) => {
                let c = QuotientHopf::new(Profile::full(), p.clone());
                let got = cotensor_dims(&c, max)?;
                let want = subalgebra_basis(p, max).dims();
                let (ok, detail) = dims_detail("cotensor and subalgebra dims", &got, &want);
                (format!("cotensor over A_*//{p} recovers {p}"), ok, detail)
            }
            Step::QuotientConvolution(n) => {
                let (p2, a2) = (Profile::p_power(*n, 2), Profile::a_power(2));
                let whole = QuotientHopf::new(Profile::full(), p2.clone()).dims(max);
                let fibre = QuotientHopf::new(a2.clone(), p2).dims(max);
                let base = QuotientHopf::new(Profile::full(), a2).dims(max);
                let conv = convolve(&fibre, &base, whole.len());
                let (ok, detail) = dims_detail("quotient dims and convolution", &whole, &conv);
                (String::from("quotient series factor through A_*^(2)"), ok, detail)
            }
            Step::Doubling(n) => doubling_step(*n, w)?,
        };
        Ok(CheckOutcome { anchor, window: w, passed, detail })
    }
}

/// Compares `Coext` over the truncation `F2[z_{n+1}]/(z_{n+1}^{2^k})` of
/// `P(n+1)_* // P(n)_*` with its fourfold doubling, in internal degrees up
/// to a quarter of the window. `k` is the least height beyond that range.
fn doubling_step(n: usize, w: DegreeWindow) -> Result<(String, bool, String)> {
    let max_t = (w.max_degree() / 4) as i32;
    let z = generator_degree(n + 1);
    let k = (0..).find(|&k| (z << k) as i32 > max_t).expect("finite height");
    let mut caps = vec![Cap::Finite(0); n];
    caps.push(Cap::Finite(k));
    let den = Profile::new(caps, Cap::Finite(k));
    let anchor = format!("doubling regrades Coext over P({})//P({n})", n + 1);
    if let Some((d, x)) = subhopf_witness(&den, w.max_degree()) {
        return Ok((anchor, false, format!("truncating profile is not a sub-Hopf algebra: degree {d}, {x}")));
    }
    let c = QuotientHopf::new(Profile::p(n + 1), den);
    let k_mod = FDAlgebra::from_quotient(&c, "C")?.trivial_module();
    let rep = doubling_regrade_check(&c, &k_mod, &k_mod, 2, SCENARIO_MAX_S, max_t)?;
    let detail = match rep.mismatch {
        None => format!(
            "{} classes regrade entry-wise for s <= {SCENARIO_MAX_S}, t <= {max_t}",
            rep.original.total()
        ),
        Some((s, t)) => format!("doubled chart differs at s = {s}, t = {t}"),
    };
    Ok((anchor, rep.passed(), detail))
}
