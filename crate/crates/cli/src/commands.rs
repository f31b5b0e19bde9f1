use std::fmt::Write;
use std::path::Path;

use hopf_core::comodule::{build_ys, check_comodule_axioms, ideal_and_quotient, splitting_check, Comodule, ComodAlgebraPresentation, Side};
use hopf_core::homalg::{build_an, ext, coext, generator_table, poincare_check, ExtChart, FDAlgebra, Resolution};
use hopf_core::milnor::{
    antipode_element, coproduct_element, parse_dual_element, parse_sq_element, sq_mul, MilnorMonomial, Sq,
};
use hopf_core::spectral::{
    ce_e2_algebras, ce_e2_comodule_first, ce_e2_comodule_second, run_vanishing_chain, E2Page, NormalSequence,
    ScenarioReport, VanishingScenario,
};
use hopf_core::subquot::{cotensor, subalgebra_basis, subhopf_witness, Profile, QuotientHopf};
use rayon::prelude::*;

use crate::args::{Cli, Command, ExtArgs, FormArg, FormatArg, ModulePreset, ProfileChoice};
use crate::chart::{emit_chart, ChartFormat};
use crate::error::{CliError, CliResult};
use crate::formats::{
    read_json, to_json, ChartJson, PageJson, PresentationJson, ProfileJson, ScenarioConfig, ScenarioFile,
    ScenarioReportJson,
};

/// Text for stdout and whether every check in it passed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }

    fn checked(stdout: String, ok: bool) -> Self {
        Outcome { stdout, ok }
    }
}

pub fn execute(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Basis { max_degree, dual } => Ok(Outcome::pass(basis(max_degree, dual))),
        Command::Mul { a, b, dual } => mul(&a, &b, dual).map(Outcome::pass),
        Command::Coprod { element } => {
            Ok(Outcome::pass(format!("{}\n", coproduct_element(&parse_dual_element(&element)?))))
        }
        Command::Antipode { element } => {
            Ok(Outcome::pass(format!("{}\n", antipode_element(&parse_dual_element(&element)?))))
        }
        Command::ProfileBasis { which, max_degree } => profile_basis(&which, max_degree).map(Outcome::pass),
        Command::Cotensor { quotient, max_degree, expect_profile } => {
            cotensor_dims(&quotient, max_degree, expect_profile.as_deref())
        }
        Command::Resolve { alg, module, max_s, max_t } => {
            let a = algebra(&alg.algebra)?;
            let m = module_of(&a, module);
            let res = Resolution::new(&a, &m, max_s, max_t)?;
            let mut out = String::new();
            for ((s, t), n) in generator_table(&res) {
                let _ = writeln!(out, "{s} {t} {n}");
            }
            Ok(Outcome::pass(out))
        }
        Command::Ext { pair, json } => {
            let chart = ext_chart(&pair)?;
            Ok(Outcome::pass(chart_text(&chart, json)))
        }
        Command::Coext { coalgebra, source, target, max_s, max_t, json } => {
            let c = finite_quotient(&coalgebra)?;
            let chart = coext(&comodule_of(&c, source)?, &comodule_of(&c, target)?, &c, max_s, max_t)?;
            Ok(Outcome::pass(chart_text(&chart, json)))
        }
        Command::Chart { input, algebra, source, target, max_s, max_t, format, out } => {
            let chart = match input {
                Some(path) => read_json::<ChartJson>(&path)?.chart()?,
                None => {
                    let missing = |f: &str| CliError::Usage(format!("chart needs --input or --{f}"));
                    ext_chart(&ExtArgs {
                        alg: crate::args::AlgebraArgs { algebra: algebra.ok_or_else(|| missing("algebra"))? },
                        source: source.ok_or_else(|| missing("source"))?,
                        target: target.ok_or_else(|| missing("target"))?,
                        max_s: max_s.ok_or_else(|| missing("max-s"))?,
                        max_t: max_t.ok_or_else(|| missing("max-t"))?,
                    })?
                }
            };
            let format = match format {
                FormatArg::Ascii => ChartFormat::Ascii,
                FormatArg::Svg => ChartFormat::Svg,
            };
            let text = emit_chart(&chart, format)?;
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(Outcome::pass(String::new()))
                }
                None => Ok(Outcome::pass(text)),
            }
        }
        Command::Ce2 { form, big, small, source, target, max_n, max_u, json } => {
            ce2(form, &big, &small, source, target, max_n, max_u, json)
        }
        Command::Vanish { config, scenario, n, window, json } => {
            let configs = match (config, scenario) {
                (Some(path), _) => read_json::<ScenarioFile>(&path)?.into_configs(),
                (None, Some(id)) => vec![ScenarioConfig {
                    scenario: id,
                    n: n.unwrap_or(0),
                    windows: window.iter().map(|w| parse_window(w)).collect::<CliResult<_>>()?,
                }],
                (None, None) => return Err(CliError::Usage(String::from("vanish needs --config or --scenario"))),
            };
            let scenarios = configs.iter().map(ScenarioConfig::scenario).collect::<CliResult<Vec<_>>>()?;
            vanish(&scenarios, json)
        }
        Command::Ys { s, presentation, element, coaction: _, check_degree } => {
            ys(s, presentation.as_deref(), element.as_deref(), check_degree)
        }
        Command::PdCheck { n } => {
            let a = build_an(n)?;
            let rep = poincare_check(&a);
            let pairing = match rep.degenerate {
                None => String::from("pairing perfect"),
                Some(k) => format!("pairing degenerate in degree {k}"),
            };
            Ok(Outcome::checked(format!("A({n}): dim {}, pd {}, {pairing}\n", rep.dim, rep.pd), rep.perfect()))
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// `MAX:GUARD`.
pub fn parse_window(s: &str) -> CliResult<crate::formats::WindowSpec> {
    let bad = || CliError::Usage(format!("bad window `{s}`, expected MAX:GUARD"));
    let (m, g) = s.split_once(':').ok_or_else(bad)?;
    Ok(crate::formats::WindowSpec { max: m.trim().parse().map_err(|_| bad())?, guard: g.trim().parse().map_err(|_| bad())? })
}

fn basis(max: u32, dual: bool) -> String {
    let mut out = String::new();
    for d in 0..=max {
        let names: Vec<String> = if dual {
            MilnorMonomial::basis(d).iter().map(ToString::to_string).collect()
        } else {
            Sq::basis(d).iter().map(ToString::to_string).collect()
        };
        let _ = writeln!(out, "{d}: {}", names.join(" "));
    }
    out
}

fn mul(a: &str, b: &str, dual: bool) -> CliResult<String> {
    if dual {
        let (x, y) = (parse_dual_element(a)?, parse_dual_element(b)?);
        return Ok(format!("{}\n", x.mul(&y)));
    }
    let (x, y) = (parse_sq_element(a)?, parse_sq_element(b)?);
    Ok(format!("{}\n", sq_mul(&x, &y, x.max_degree() + y.max_degree())?))
}

fn profile_basis(which: &ProfileChoice, max: u32) -> CliResult<String> {
    let space = if let Some(q) = &which.quotient {
        QuotientHopf::parse_preset(q)?.basis(max)
    } else {
        let p = match (&which.profile, &which.profile_file) {
            (Some(s), _) => Profile::parse_preset(s)?,
            (None, Some(path)) => read_json::<ProfileJson>(path)?.profile()?,
            (None, None) => return Err(CliError::Usage(String::from("no profile given"))),
        };
        if let Some((degree, witness)) = subhopf_witness(&p, max) {
            return Err(hopf_core::Error::NotSubHopf { degree, witness }.into());
        }
        subalgebra_basis(&p, max)
    };
    let mut out = String::new();
    for d in 0..=max {
        let _ = writeln!(out, "{d}: {}", space.labels(d).join(" "));
    }
    Ok(out)
}

fn cotensor_dims(quotient: &str, max: u32, expect: Option<&str>) -> CliResult<Outcome> {
    let c = QuotientHopf::parse_preset(quotient)?;
    let a = Comodule::regular(&QuotientHopf::dual_steenrod(), Side::Right, max);
    let dims = cotensor(&a, &c, &Comodule::trivial(Side::Left, max), max)?.dims();
    let mut out = String::new();
    for (d, n) in dims.iter().enumerate() {
        let _ = writeln!(out, "{d} {n}");
    }
    let ok = match expect {
        None => true,
        Some(p) => {
            let want = subalgebra_basis(&Profile::parse_preset(p)?, max).dims();
            let ok = want == dims;
            let _ = writeln!(out, "{} against {p}", if ok { "agrees" } else { "differs" });
            ok
        }
    };
    Ok(Outcome::checked(out, ok))
}

fn finite_quotient(s: &str) -> CliResult<QuotientHopf> {
    let c = QuotientHopf::parse_preset(s)?;
    if !c.is_finite() {
        return Err(CliError::Usage(format!("{s} is not finite")));
    }
    Ok(c)
}

pub fn algebra(s: &str) -> CliResult<FDAlgebra> {
    Ok(FDAlgebra::from_quotient(&finite_quotient(s)?, s)?)
}

fn module_of(a: &FDAlgebra, m: ModulePreset) -> hopf_core::comodule::FDModule {
    match m {
        ModulePreset::Trivial => a.trivial_module(),
        ModulePreset::Regular => a.regular_module(),
    }
}

fn comodule_of(c: &QuotientHopf, m: ModulePreset) -> CliResult<Comodule> {
    let top = c.top_degree().ok_or_else(|| CliError::Usage(String::from("coalgebra is not finite")))?;
    Ok(match m {
        ModulePreset::Trivial => Comodule::trivial(Side::Left, top),
        ModulePreset::Regular => Comodule::regular(c, Side::Left, top),
    })
}

fn ext_chart(p: &ExtArgs) -> CliResult<ExtChart> {
    let a = algebra(&p.alg.algebra)?;
    Ok(ext(&a, &module_of(&a, p.source), &module_of(&a, p.target), p.max_s, p.max_t)?)
}

fn chart_text(c: &ExtChart, json: bool) -> String {
    if json {
        to_json(&ChartJson::from(c))
    } else {
        c.to_text()
    }
}

#[allow(clippy::too_many_arguments)]
fn ce2(
    form: FormArg,
    big: &str,
    small: &str,
    source: Option<ModulePreset>,
    target: Option<ModulePreset>,
    max_n: usize,
    max_u: i32,
    json: bool,
) -> CliResult<Outcome> {
    let page: E2Page = match form {
        FormArg::Algebras => {
            if source.is_some() || target.is_some() {
                return Err(CliError::Usage(String::from("the algebra form takes L = M = F2")));
            }
            let seq = NormalSequence::new(algebra(big)?, algebra(small)?)?;
            ce_e2_algebras(&seq, &seq.quotient.trivial_module(), &seq.s.trivial_module(), max_n, max_u)?
        }
        FormArg::First | FormArg::Second => {
            let (h, k) = (finite_quotient(big)?, finite_quotient(small)?);
            let m = comodule_of(&h, source.unwrap_or(ModulePreset::Trivial))?;
            let n = comodule_of(&h, target.unwrap_or(ModulePreset::Trivial))?;
            if form == FormArg::First {
                ce_e2_comodule_first(&h, &k, &m, &n, max_n, max_u)?
            } else {
                ce_e2_comodule_second(&h, &k, &m, &n, max_n, max_u)?
            }
        }
    };
    let ok = page.first_quadrant() && page.subquotient_failure().is_none() && page.factorized_agrees != Some(false);
    let text = if json {
        to_json(&PageJson::from(&page))
    } else {
        let mut t = page.to_text();
        match page.subquotient_failure() {
            None => t.push_str("subquotient bound holds\n"),
            Some((n, u)) => {
                let _ = writeln!(t, "subquotient bound fails at n = {n}, u = {u}");
            }
        }
        if let Some(f) = page.factorized_agrees {
            let _ = writeln!(t, "factorized form {}", if f { "agrees" } else { "differs" });
        }
        t
    };
    Ok(Outcome::checked(text, ok))
}

/// Runs scenarios in parallel; reports come back in input order.
pub fn run_scenarios(scenarios: &[VanishingScenario]) -> CliResult<Vec<ScenarioReport>> {
    scenarios.par_iter().map(|s| run_vanishing_chain(s).map_err(CliError::from)).collect()
}

fn vanish(scenarios: &[VanishingScenario], json: bool) -> CliResult<Outcome> {
    let reports = run_scenarios(scenarios)?;
    let ok = reports.iter().all(ScenarioReport::passed);
    let text = if json {
        to_json(&reports.iter().map(ScenarioReportJson::from).collect::<Vec<_>>())
    } else {
        reports.iter().map(ScenarioReport::to_text).collect()
    };
    Ok(Outcome::checked(text, ok))
}

fn ys(s: Option<u32>, presentation: Option<&Path>, element: Option<&str>, check_degree: Option<u32>) -> CliResult<Outcome> {
    let pres: ComodAlgebraPresentation = match (s, presentation) {
        (Some(s), _) => build_ys(s),
        (None, Some(path)) => read_json::<PresentationJson>(path)?.presentation()?,
        (None, None) => return Err(CliError::Usage(String::from("ys needs --s or --presentation"))),
    };
    let mut out = String::new();
    let mut ok = true;
    if let Some(e) = element {
        let k = pres.generator_index(e).ok_or_else(|| CliError::Usage(format!("unknown generator `{e}`")))?;
        let _ = writeln!(out, "{}", pres.generator_coaction_string(k));
    }
    if let Some(max) = check_degree {
        let full = QuotientHopf::dual_steenrod();
        let m = pres.comodule(max);
        match check_comodule_axioms(&m, &full, max) {
            Ok(()) => {
                let _ = writeln!(out, "comodule axioms hold through degree {max}");
            }
            Err(e) => {
                ok = false;
                let _ = writeln!(out, "comodule axioms fail: {e}");
            }
        }
        if let Some(s) = s.filter(|&s| s >= 1) {
            let c = QuotientHopf::new(Profile::full(), Profile::p_power(s as usize, 2));
            let gens: Vec<String> = (1..=s).map(|r| format!("y{}", (1u32 << r) - 1)).collect();
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            match ideal_and_quotient(&pres, &refs, &c, max) {
                Ok(_) => {
                    let _ = writeln!(out, "J_{s} is a subcomodule over A_*//P({s})^(2)_* through degree {max}");
                }
                Err(e) => {
                    ok = false;
                    let _ = writeln!(out, "J_{s} is not a subcomodule: {e}");
                }
            }
            let rep = splitting_check(s, max)?;
            match &rep.first_failure {
                None => {
                    let _ = writeln!(out, "splitting is an isomorphism through degree {max}");
                }
                Some((d, w)) => {
                    ok = false;
                    let _ = writeln!(out, "splitting fails in degree {d}: {w}");
                }
            }
        }
    }
    if element.is_none() && check_degree.is_none() {
        for (k, (name, d)) in pres.generators().iter().enumerate() {
            let _ = writeln!(out, "{name} ({d}): {}", pres.generator_coaction_string(k));
        }
    }
    Ok(Outcome::checked(out, ok))
}

