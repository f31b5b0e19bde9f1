//! Comodules over quotients of `A_*`, comodule algebras given by generators,
//! and finite modules over the dual algebras.
//!
//! A coaction term is stored as `(a, m')` with `a` a monomial of `A_*` and
//! `m'` a basis element, printed `a|m'`. For a left comodule this is
//! `a (x) m'`; for a right comodule it stands for `m' (x) a`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, Subspace};
use crate::graded::{Degree, GradedSpace};
use crate::milnor::{antipode, parse_monomial, MilnorMonomial, Sq};
use crate::subquot::{convolve, cotensor, Profile, QuotientHopf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A basis element: `(degree, index within degree)`.
pub type Elem = (Degree, usize);

/// A graded comodule on a finite window, with coaction given on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    space: GradedSpace,
    side: Side,
    /// `coaction[d][i]` lists `(a, j)`: the term `a|m'` with `m'` the `j`-th
    /// basis element of degree `d - |a|`.
    coaction: Vec<Vec<Vec<(MilnorMonomial, usize)>>>,
    complete: bool,
}

impl Comodule {
    pub fn new(
        space: GradedSpace,
        side: Side,
        coaction: Vec<Vec<Vec<(MilnorMonomial, usize)>>>,
    ) -> Result<Self> {
        let dims = space.dims();
        if coaction.len() != dims.len() {
            return Err(Error::ShapeMismatch {
                degree: 0,
                expected: (dims.len(), 0),
                found: (coaction.len(), 0),
            });
        }
        for (d, terms) in coaction.iter().enumerate() {
            if terms.len() != dims[d] {
                return Err(Error::ShapeMismatch {
                    degree: d as Degree,
                    expected: (dims[d], 0),
                    found: (terms.len(), 0),
                });
            }
            for t in terms.iter().flatten() {
                let td = d as i64 - t.0.degree() as i64;
                if td < 0 || t.1 >= dims[td as usize] {
                    return Err(Error::InvalidCoaction {
                        degree: d as Degree,
                        witness: format!("term {}|#{} out of range", t.0, t.1),
                    });
                }
            }
        }
        Ok(Comodule { space, side, coaction, complete: true })
    }

    /// The ground field in degree 0, populated with zeros up to `max`.
    pub fn trivial(side: Side, max: Degree) -> Self {
        let mut labels = vec![Vec::new(); max as usize + 1];
        labels[0].push(String::from("1"));
        let mut coaction = vec![Vec::new(); max as usize + 1];
        coaction[0].push(vec![(MilnorMonomial::unit(), 0)]);
        Comodule { space: GradedSpace::new(labels), side, coaction, complete: true }
    }

    /// A quotient `C` of `A_*` coacting on itself through its coproduct.
    pub fn regular(c: &QuotientHopf, side: Side, max: Degree) -> Self {
        let mons: Vec<Vec<MilnorMonomial>> = (0..=max).map(|d| c.monomials(d)).collect();
        let index: BTreeMap<&MilnorMonomial, usize> = mons
            .iter()
            .flat_map(|ms| ms.iter().enumerate().map(|(i, m)| (m, i)))
            .collect();
        let coaction = mons
            .iter()
            .map(|ms| {
                ms.iter()
                    .map(|m| {
                        c.coproduct(m)
                            .sorted_terms()
                            .into_iter()
                            .map(|(x1, x2)| match side {
                                Side::Right => (x2, index[&x1]),
                                Side::Left => {
                                    let j = index[&x2];
                                    (x1, j)
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let labels = mons.iter().map(|ms| ms.iter().map(ToString::to_string).collect()).collect();
        Comodule { space: GradedSpace::new(labels), side, coaction, complete: true }
    }

    /// Marks the comodule as a truncation of something larger, so that
    /// constructions needing the whole object refuse it.
    pub fn mark_incomplete(mut self) -> Self {
        self.complete = false;
        self
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.space.dim(d)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.space.dims()
    }

    pub fn max_degree(&self) -> Degree {
        self.space.max_degree().unwrap_or(0)
    }

    pub fn label(&self, d: Degree, i: usize) -> &str {
        &self.space.labels(d)[i]
    }

    pub fn coaction_terms(&self, d: Degree, i: usize) -> impl Iterator<Item = (MilnorMonomial, Elem)> + '_ {
        self.coaction[d as usize][i].iter().map(move |(a, j)| (a.clone(), (d - a.degree(), *j)))
    }

    /// Highest degree of a basis element.
    pub fn top_degree(&self) -> Option<Degree> {
        (0..=self.max_degree()).rev().find(|&d| self.dim(d) > 0)
    }

    /// Coaction of a basis element, printed `a|m' + ...` by coefficient degree.
    pub fn coaction_string(&self, d: Degree, i: usize) -> String {
        let mut terms: Vec<(MilnorMonomial, Elem)> = self.coaction_terms(d, i).collect();
        terms.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        if terms.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> =
            terms.iter().map(|(a, (e, j))| format!("{a}|{}", self.label(*e, *j))).collect();
        parts.join(" + ")
    }

    /// Restriction to degrees `0..=max`.
    pub fn truncate(&self, max: Degree) -> Result<Comodule> {
        let space = self.space.truncate(max)?;
        Ok(Comodule {
            space,
            side: self.side,
            coaction: self.coaction[..=max as usize].to_vec(),
            complete: self.complete && self.top_degree().is_none_or(|t| t <= max),
        })
    }

    /// Drops coefficients outside `c`, giving the induced `c`-comodule.
    pub fn project(&self, c: &QuotientHopf) -> Comodule {
        let coaction = self
            .coaction
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|t| t.iter().filter(|(a, _)| c.contains(a)).cloned().collect())
                    .collect()
            })
            .collect();
        Comodule { coaction, ..self.clone() }
    }
}

/// The first failure of the comodule axioms over `c`, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub degree: Degree,
    pub axiom: &'static str,
    pub witness: String,
}

type Triple = (MilnorMonomial, MilnorMonomial, Elem);

fn toggle<T: Ord>(set: &mut BTreeSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

/// Checks counit and coassociativity over `c` in degrees `0..=max`.
pub fn comodule_axiom_failure(m: &Comodule, c: &QuotientHopf, max: Degree) -> Option<AxiomFailure> {
    let max = max.min(m.max_degree());
    for d in 0..=max {
        for i in 0..m.dim(d) {
            let terms: Vec<(MilnorMonomial, Elem)> = m.coaction_terms(d, i).collect();
            let fail = |axiom, witness: String| Some(AxiomFailure { degree: d, axiom, witness });
            if let Some((a, _)) = terms.iter().find(|(a, _)| !c.contains(a)) {
                return fail("coefficients", format!("{} has coefficient {a}", m.label(d, i)));
            }
            let units: BTreeSet<Elem> = {
                let mut s = BTreeSet::new();
                for (a, e) in &terms {
                    if a.is_unit() {
                        toggle(&mut s, *e);
                    }
                }
                s
            };
            if units.len() != 1 || !units.contains(&(d, i)) {
                return fail("counit", format!("counit fails on {}", m.label(d, i)));
            }
            // Both sides as sets of (outer, inner, element) triples, where for a
            // left comodule the coefficient order is (first, second) and for a
            // right comodule it is (closest to m, farthest).
            let mut lhs: BTreeSet<Triple> = BTreeSet::new();
            let mut rhs: BTreeSet<Triple> = BTreeSet::new();
            for (a, e) in &terms {
                for (b, e2) in m.coaction_terms(e.0, e.1) {
                    match m.side {
                        Side::Left => toggle(&mut lhs, (a.clone(), b, e2)),
                        Side::Right => toggle(&mut lhs, (b, a.clone(), e2)),
                    }
                }
                for (a1, a2) in c.coproduct(a).iter() {
                    toggle(&mut rhs, (a1.clone(), a2.clone(), *e));
                }
            }
            if lhs != rhs {
                let diff = lhs.symmetric_difference(&rhs).next().cloned();
                let w = diff.map_or(String::new(), |(x, y, e)| {
                    format!("{x}|{y}|{} on {}", m.label(e.0, e.1), m.label(d, i))
                });
                return fail("coassociativity", w);
            }
        }
    }
    None
}

pub fn check_comodule_axioms(m: &Comodule, c: &QuotientHopf, max: Degree) -> Result<()> {
    match comodule_axiom_failure(m, c, max) {
        None => Ok(()),
        Some(f) => Err(Error::InvalidCoaction {
            degree: f.degree,
            witness: format!("{}: {}", f.axiom, f.witness),
        }),
    }
}

/// Exponent vector over the presentation generators, trailing zeros stripped.
pub type GenMonomial = Vec<u32>;

fn trim(mut v: GenMonomial) -> GenMonomial {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn gen_mul(a: &[u32], b: &[u32]) -> GenMonomial {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

type CoactionSum = BTreeSet<(MilnorMonomial, GenMonomial)>;

fn sum_mul(x: &CoactionSum, y: &CoactionSum) -> CoactionSum {
    let mut out = BTreeSet::new();
    for (a, m) in x {
        for (b, n) in y {
            toggle(&mut out, (a.mul(b), trim(gen_mul(m, n))));
        }
    }
    out
}

/// A polynomial comodule algebra: generators with degrees and the coaction on
/// each generator, extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComodAlgebraPresentation {
    generators: Vec<(String, Degree)>,
    coaction: Vec<CoactionSum>,
    side: Side,
}

impl ComodAlgebraPresentation {
    /// `coaction[k]` lists `(a, m)` pairs for generator `k`.
    pub fn new(
        generators: Vec<(String, Degree)>,
        coaction: Vec<Vec<(MilnorMonomial, GenMonomial)>>,
        side: Side,
    ) -> Result<Self> {
        if let Some((n, _)) = generators.iter().find(|(_, d)| *d == 0) {
            return Err(Error::Precondition(format!("generator {n} has degree 0")));
        }
        if coaction.len() != generators.len() {
            return Err(Error::Precondition(String::from("one coaction per generator required")));
        }
        let degs: Vec<Degree> = generators.iter().map(|g| g.1).collect();
        let mut sums = Vec::new();
        for (k, terms) in coaction.into_iter().enumerate() {
            let mut s = BTreeSet::new();
            for (a, m) in terms {
                let m = trim(m);
                if a.degree() + gen_degree(&degs, &m) != degs[k] {
                    return Err(Error::InvalidCoaction {
                        degree: degs[k],
                        witness: format!("inhomogeneous term {a}|{} for {}", gen_label(&generators, &m), generators[k].0),
                    });
                }
                toggle(&mut s, (a, m));
            }
            sums.push(s);
        }
        Ok(ComodAlgebraPresentation { generators, coaction: sums, side })
    }

    /// Parse coactions written `1|y1 + z1^4|1`.
    pub fn parse(generators: Vec<(String, Degree)>, coaction: &[(String, String)], side: Side) -> Result<Self> {
        let mut per_gen = vec![Vec::new(); generators.len()];
        for (name, text) in coaction {
            let k = generators
                .iter()
                .position(|g| &g.0 == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            for term in text.split('+') {
                let (a, m) = term
                    .split_once('|')
                    .ok_or_else(|| Error::Parse(format!("expected `a|m`, found `{}`", term.trim())))?;
                per_gen[k].push((parse_monomial(a)?, parse_gen_monomial(&generators, m)?));
            }
        }
        for (k, terms) in per_gen.iter_mut().enumerate() {
            if terms.is_empty() {
                let mut e = vec![0; k + 1];
                e[k] = 1;
                terms.push((MilnorMonomial::unit(), e));
            }
        }
        ComodAlgebraPresentation::new(generators, per_gen, side)
    }

    pub fn generators(&self) -> &[(String, Degree)] {
        &self.generators
    }

    pub fn side(&self) -> Side {
        self.side
    }

    fn degrees(&self) -> Vec<Degree> {
        self.generators.iter().map(|g| g.1).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.0 == name)
    }

    /// Coaction on generator `k`, printed.
    pub fn generator_coaction_string(&self, k: usize) -> String {
        let mut terms: Vec<&(MilnorMonomial, GenMonomial)> = self.coaction[k].iter().collect();
        terms.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let parts: Vec<String> =
            terms.iter().map(|(a, m)| format!("{a}|{}", gen_label(&self.generators, m))).collect();
        parts.join(" + ")
    }

    /// Monomials of degree `d` in increasing exponent order.
    pub fn monomials(&self, d: Degree) -> Vec<GenMonomial> {
        fn rec(degs: &[Degree], k: usize, left: Degree, cur: &mut Vec<u32>, out: &mut Vec<GenMonomial>) {
            if k == degs.len() {
                if left == 0 {
                    out.push(trim(cur.clone()));
                }
                return;
            }
            for e in 0..=left / degs[k] {
                cur[k] = e;
                rec(degs, k + 1, left - e * degs[k], cur, out);
            }
            cur[k] = 0;
        }
        let degs = self.degrees();
        let mut out = Vec::new();
        rec(&degs, 0, d, &mut vec![0; degs.len()], &mut out);
        out.sort();
        out
    }

    pub fn label(&self, m: &[u32]) -> String {
        gen_label(&self.generators, m)
    }

    /// The comodule on the monomial basis in degrees `0..=max`.
    pub fn comodule(&self, max: Degree) -> Comodule {
        let mons: Vec<Vec<GenMonomial>> = (0..=max).map(|d| self.monomials(d)).collect();
        let index: BTreeMap<&GenMonomial, usize> = mons
            .iter()
            .flat_map(|ms| ms.iter().enumerate().map(|(i, m)| (m, i)))
            .collect();
        let mut memo: BTreeMap<GenMonomial, CoactionSum> = BTreeMap::new();
        let mut one = BTreeSet::new();
        one.insert((MilnorMonomial::unit(), Vec::new()));
        memo.insert(Vec::new(), one);
        let mut coaction = Vec::new();
        for ms in &mons {
            let mut row = Vec::new();
            for m in ms {
                if !memo.contains_key(m) {
                    let k = m.iter().position(|&e| e > 0).unwrap_or(0);
                    let mut rest = m.clone();
                    rest[k] -= 1;
                    let rest = trim(rest);
                    let s = sum_mul(&self.coaction[k], &memo[&rest]);
                    memo.insert(m.clone(), s);
                }
                row.push(memo[m].iter().map(|(a, n)| (a.clone(), index[n])).collect());
            }
            coaction.push(row);
        }
        let labels = mons.iter().map(|ms| ms.iter().map(|m| self.label(m)).collect()).collect();
        Comodule { space: GradedSpace::new(labels), side: self.side, coaction, complete: true }
    }
}

fn gen_degree(degs: &[Degree], m: &[u32]) -> Degree {
    m.iter().zip(degs).map(|(e, d)| e * d).sum()
}

fn gen_label(generators: &[(String, Degree)], m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| {
            if e == 1 {
                generators[k].0.clone()
            } else {
                format!("{}^{e}", generators[k].0)
            }
        })
        .collect();
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join(" ")
    }
}

/// Parse a monomial in named generators, e.g. `y1^2 y3`.
pub fn parse_gen_monomial(generators: &[(String, Degree)], s: &str) -> Result<GenMonomial> {
    let s = s.trim();
    let mut out = vec![0; generators.len()];
    if s == "1" {
        return Ok(Vec::new());
    }
    for tok in s.split_whitespace() {
        let (name, pow) = match tok.split_once('^') {
            Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad power in `{tok}`")))?),
            None => (tok, 1),
        };
        let k = generators
            .iter()
            .position(|g| g.0 == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        out[k] += pow;
    }
    Ok(trim(out))
}

/// `F2[y_1, ..., y_{2^s - 1}]`, `|y_k| = 4k`, with
/// `y_{2^r-1} -> sum_k z_k^4 | y_{2^{r-k}-1}^{2^k}` and the remaining
/// generators primitive. A right comodule.
pub fn build_ys(s: u32) -> ComodAlgebraPresentation {
    let n = (1usize << s) - 1;
    let generators: Vec<(String, Degree)> =
        (1..=n).map(|k| (format!("y{k}"), 4 * k as Degree)).collect();
    let gen = |k: usize, p: u32| -> GenMonomial {
        if k == 0 {
            return Vec::new();
        }
        let mut e = vec![0; k];
        e[k - 1] = p;
        e
    };
    let coaction = (1..=n)
        .map(|k| {
            if (k + 1).is_power_of_two() {
                let r = (k + 1).trailing_zeros() as usize;
                (0..=r)
                    .map(|j| {
                        (MilnorMonomial::generator_power(j, 4), gen((1 << (r - j)) - 1, 1 << j))
                    })
                    .collect()
            } else {
                vec![(MilnorMonomial::unit(), gen(k, 1))]
            }
        })
        .collect();
    ComodAlgebraPresentation::new(generators, coaction, Side::Right)
        .expect("generator degrees are positive and terms homogeneous")
}

/// The monomial ideal generated by `gens` and the quotient comodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealQuotient {
    pub ideal: GradedSpace,
    pub quotient: Comodule,
}

/// Checks that the ideal generated by `gens` is a sub-`c`-comodule in degrees
/// `0..=max` (coefficients projected to `c`) and returns it with the induced
/// quotient `c`-comodule.
pub fn ideal_and_quotient(
    p: &ComodAlgebraPresentation,
    gens: &[&str],
    c: &QuotientHopf,
    max: Degree,
) -> Result<IdealQuotient> {
    let idx: Vec<usize> = gens
        .iter()
        .map(|g| p.generator_index(g).ok_or_else(|| Error::Parse(format!("unknown generator `{g}`"))))
        .collect::<Result<_>>()?;
    let full = p.comodule(max).project(c);
    let mons: Vec<Vec<GenMonomial>> = (0..=max).map(|d| p.monomials(d)).collect();
    let in_ideal = |m: &GenMonomial| idx.iter().any(|&k| m.get(k).is_some_and(|&e| e > 0));
    let mut ideal = Vec::new();
    let mut qindex: Vec<Vec<Option<usize>>> = Vec::new();
    let mut qlabels = Vec::new();
    for ms in &mons {
        let mut il = Vec::new();
        let mut qi = Vec::new();
        let mut ql = Vec::new();
        for m in ms {
            if in_ideal(m) {
                il.push(p.label(m));
                qi.push(None);
            } else {
                qi.push(Some(ql.len()));
                ql.push(p.label(m));
            }
        }
        ideal.push(il);
        qindex.push(qi);
        qlabels.push(ql);
    }
    let mut coaction = Vec::new();
    for (d, ms) in mons.iter().enumerate() {
        let mut row = Vec::new();
        for (i, m) in ms.iter().enumerate() {
            let terms: Vec<(MilnorMonomial, Elem)> = full.coaction_terms(d as Degree, i).collect();
            if in_ideal(m) {
                if let Some((a, e)) = terms.iter().find(|(_, e)| qindex[e.0 as usize][e.1].is_some()) {
                    return Err(Error::NotSubcomodule {
                        degree: d as Degree,
                        witness: format!("coaction of {} contains {a}|{}", p.label(m), full.label(e.0, e.1)),
                    });
                }
            } else {
                row.push(
                    terms
                        .iter()
                        .filter_map(|(a, e)| qindex[e.0 as usize][e.1].map(|j| (a.clone(), j)))
                        .collect(),
                );
            }
        }
        coaction.push(row);
    }
    let quotient = Comodule { space: GradedSpace::new(qlabels), side: p.side, coaction, complete: true };
    Ok(IdealQuotient { ideal: GradedSpace::new(ideal), quotient })
}

/// Outcome of the splitting comparison for `H_*(Y_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub source_dims: Vec<usize>,
    pub cotensor_dims: Vec<usize>,
    pub product_dims: Vec<usize>,
    pub first_failure: Option<(Degree, String)>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares `H = H_*(Y_s)` with `A_* box_C H/J_s`, `C = A_* // P(s)^(2)_*`,
/// through `h -> sum pi(h') (x) a` over the coaction `h -> sum h' (x) a`.
pub fn splitting_check(s: u32, max: Degree) -> Result<SplittingReport> {
    let pres = build_ys(s);
    let h = pres.comodule(max);
    let gens: Vec<String> = (1..=s).map(|r| format!("y{}", (1u32 << r) - 1)).collect();
    let gen_refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let c = QuotientHopf::new(Profile::full(), Profile::p_power(s as usize, 2));
    let iq = ideal_and_quotient(&pres, &gen_refs, &c, max)?;
    let q = &iq.quotient;
    let a_left = Comodule::regular(&QuotientHopf::dual_steenrod(), Side::Left, max);
    let cot = cotensor(q, &c, &a_left, max)?;

    // position of each quotient label among full monomials
    let qlabel: BTreeMap<&str, (Degree, usize)> = (0..=max)
        .flat_map(|d| (0..q.dim(d)).map(move |i| (d, i)))
        .map(|(d, i)| (q.label(d, i), (d, i)))
        .collect();
    let a_index: BTreeMap<&str, usize> = (0..=max)
        .flat_map(|d| (0..a_left.dim(d)).map(move |i| (d, i)))
        .map(|(d, i)| (a_left.label(d, i), i))
        .collect();

    let p_dims: Vec<usize> = (0..=max).map(|d| Profile::p_power(s as usize, 2).monomials(d).len()).collect();
    let product_dims = convolve(&p_dims, &q.dims(), max as usize + 1);
    let mut first_failure = None;
    for d in 0..=max {
        let basis = &cot.tensor_basis[d as usize];
        let pos: BTreeMap<(Degree, usize, usize), usize> =
            basis.iter().enumerate().map(|(j, &t)| (t, j)).collect();
        let mut kernel = Subspace::new(basis.len());
        for v in &cot.kernels[d as usize] {
            kernel.add(v);
        }
        let mut image = Subspace::new(basis.len());
        let mut fail = None;
        for i in 0..h.dim(d) {
            let mut v = BitVec::zeros(basis.len());
            for (a, (e, j)) in h.coaction_terms(d, i) {
                if let Some(&(qd, qi)) = qlabel.get(h.label(e, j)) {
                    let ai = a_index[a.to_string().as_str()];
                    v.flip(pos[&(qd, qi, ai)]);
                }
            }
            if !kernel.contains(&v) {
                fail = Some(format!("image of {} is not in the cotensor product", h.label(d, i)));
                break;
            }
            if !image.add(&v) {
                fail = Some(format!("image of {} is linearly dependent", h.label(d, i)));
                break;
            }
        }
        let (hd, cd, pd) = (h.dim(d), cot.space.dim(d), product_dims[d as usize]);
        if fail.is_none() && (hd != cd || hd != pd) {
            fail = Some(format!("dimensions {hd} (source), {cd} (cotensor), {pd} (product)"));
        }
        if let Some(f) = fail {
            first_failure = Some((d, f));
            break;
        }
    }
    Ok(SplittingReport { source_dims: h.dims(), cotensor_dims: cot.dims(), product_dims, first_failure })
}

fn doubled_label(l: &str, e: u32) -> String {
    if let Some(rest) = l.strip_suffix(')') {
        if let Some((base, k)) = rest.rsplit_once("_(") {
            if let Ok(k) = k.parse::<u32>() {
                return format!("{base}_({})", k + e);
            }
        }
    }
    format!("{l}_({e})")
}

/// Frobenius doubling: degrees times `2^e`, coefficients raised to `2^e`-th
/// powers. The result is a comodule over `A_*^(e)`.
pub fn double_comodule(m: &Comodule, e: u32) -> Comodule {
    let f = 1usize << e;
    let max = m.max_degree() as usize * f;
    let mut labels = vec![Vec::new(); max + 1];
    let mut coaction = vec![Vec::new(); max + 1];
    for d in 0..=m.max_degree() {
        labels[d as usize * f] = m.space.labels(d).iter().map(|l| doubled_label(l, e)).collect();
        coaction[d as usize * f] = m.coaction[d as usize]
            .iter()
            .map(|ts| ts.iter().map(|(a, j)| (a.frobenius(e), *j)).collect())
            .collect();
    }
    Comodule { space: GradedSpace::new(labels), side: m.side, coaction, complete: m.complete }
}

/// A finite graded module over an algebra with a chosen basis of operations.
/// `action[k]` is the matrix of `ops[k]`, columns indexed by the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    degrees: Vec<i32>,
    labels: Vec<String>,
    ops: Vec<Sq>,
    action: Vec<BitMatrix>,
}

impl FDModule {
    pub fn new(degrees: Vec<i32>, labels: Vec<String>, ops: Vec<Sq>, action: Vec<BitMatrix>) -> Result<Self> {
        let n = degrees.len();
        if labels.len() != n || ops.len() != action.len() {
            return Err(Error::ShapeMismatch { degree: 0, expected: (n, ops.len()), found: (labels.len(), action.len()) });
        }
        for (k, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::ShapeMismatch { degree: ops[k].degree(), expected: (n, n), found: (a.rows(), a.cols()) });
            }
            let od = ops[k].degree() as i32;
            for c in 0..n {
                for r in a.column(c).iter_ones() {
                    if degrees[r] != degrees[c] + od {
                        return Err(Error::Precondition(format!(
                            "{} sends {} to {} with the wrong degree",
                            ops[k], labels[c], labels[r]
                        )));
                    }
                }
            }
        }
        Ok(FDModule { degrees, labels, ops, action })
    }

    /// `F2` in degree 0 with every positive-degree operation acting by zero.
    pub fn trivial(ops: Vec<Sq>) -> Self {
        let action = ops
            .iter()
            .map(|o| if o.is_unit() { BitMatrix::identity(1) } else { BitMatrix::zeros(1, 1) })
            .collect();
        FDModule { degrees: vec![0], labels: vec![String::from("1")], ops, action }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ops(&self) -> &[Sq] {
        &self.ops
    }

    pub fn op_index(&self, op: &Sq) -> Option<usize> {
        self.ops.iter().position(|o| o == op)
    }

    pub fn action(&self, k: usize) -> &BitMatrix {
        &self.action[k]
    }

    /// Action of `op`, zero when the operation is not among `ops`.
    pub fn act(&self, op: &Sq, v: &BitVec) -> BitVec {
        match self.op_index(op) {
            Some(k) => self.action[k].mul_vec(v),
            None => BitVec::zeros(self.dim()),
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    /// Basis indices in degree `d`.
    pub fn basis_in_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Shift all degrees by `k`.
    pub fn shifted(&self, k: i32) -> FDModule {
        FDModule { degrees: self.degrees.iter().map(|d| d + k).collect(), ..self.clone() }
    }

    /// Restriction along a subset of operations.
    pub fn restrict(&self, ops: &[Sq]) -> FDModule {
        let action = ops
            .iter()
            .map(|o| match self.op_index(o) {
                Some(k) => self.action[k].clone(),
                None => BitMatrix::zeros(self.dim(), self.dim()),
            })
            .collect();
        FDModule { ops: ops.to_vec(), action, ..self.clone() }
    }
}

/// Doubling of modules: degrees times `2^e`, and `Sq(2^e R)` acts as `Sq(R)` did.
pub fn double_module(m: &FDModule, e: u32) -> FDModule {
    FDModule {
        degrees: m.degrees.iter().map(|d| d << e).collect(),
        labels: m.labels.iter().map(|l| doubled_label(l, e)).collect(),
        ops: m.ops.iter().map(|o| Sq::new(o.entries().iter().map(|r| r << e).collect())).collect(),
        action: m.action.clone(),
    }
}

/// Degree-wise dual of a comodule as a module over the dual algebra of `c`.
/// Operations are the basis of `c` in degrees `<= max`; the dual basis
/// element `m*` sits in degree `|m|` and operations raise degree. A right
/// coaction is turned into a left action through the antipode.
pub fn dualize_comodule(m: &Comodule, c: &QuotientHopf, max: Degree) -> Result<FDModule> {
    let populated = m.max_degree();
    if max > populated {
        return Err(Error::Truncation { requested: max, populated });
    }
    let mut offsets = Vec::new();
    let mut degrees = Vec::new();
    let mut labels = Vec::new();
    for d in 0..=max {
        offsets.push(degrees.len());
        for l in m.space.labels(d) {
            degrees.push(d as i32);
            labels.push(if let Some(b) = l.strip_suffix('*') { String::from(b) } else { format!("{l}*") });
        }
    }
    let n = degrees.len();
    let ops: Vec<Sq> = (0..=max).flat_map(|d| c.monomials(d)).map(|x| Sq::from_monomial(&x)).collect();
    let op_pos: BTreeMap<MilnorMonomial, usize> =
        ops.iter().enumerate().map(|(k, o)| (o.dual_monomial(), k)).collect();
    let mut action = vec![BitMatrix::zeros(n, n); ops.len()];
    for d in 0..=max {
        for i in 0..m.dim(d) {
            let row = offsets[d as usize] + i;
            for (a, (e, j)) in m.coaction_terms(d, i) {
                let col = offsets[e as usize] + j;
                let pairing = match m.side {
                    Side::Left => crate::milnor::DualElement::from(a),
                    Side::Right => antipode(&a),
                };
                for x in pairing.iter() {
                    if let Some(&k) = op_pos.get(x) {
                        let v = action[k].get(row, col);
                        action[k].set(row, col, !v);
                    }
                }
            }
        }
    }
    FDModule::new(degrees, labels, ops, action)
}
