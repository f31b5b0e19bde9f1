//! Profile subHopf algebras of `A_*`, their quotients, and cotensor products.
//!
//! A profile `h` spans the monomials whose `z_i`-exponent is a multiple of
//! `2^{h(i)}` (zero when `h(i)` is infinite). A quotient `num // den` has the
//! numerator monomials with every `z_i`-exponent below `2^{h_den(i)}` as basis.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::comodule::{Comodule, Side};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::graded::{Degree, GradedSpace};
use crate::milnor::{coproduct, DualTensor, MilnorMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cap {
    Finite(u32),
    Inf,
}

impl Cap {
    fn multiple(self, e: u32) -> bool {
        match self {
            Cap::Inf => e == 0,
            Cap::Finite(h) if h >= 32 => e == 0,
            Cap::Finite(h) => e & ((1u32 << h) - 1) == 0,
        }
    }

    fn below(self, e: u32) -> bool {
        match self {
            Cap::Inf => true,
            Cap::Finite(h) if h >= 32 => true,
            Cap::Finite(h) => e < (1u32 << h),
        }
    }

    fn shifted(self, e: u32) -> Cap {
        match self {
            Cap::Inf => Cap::Inf,
            Cap::Finite(h) => Cap::Finite(h + e),
        }
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cap::Inf => f.write_str("inf"),
            Cap::Finite(h) => write!(f, "{h}"),
        }
    }
}

/// A profile function given by explicit values followed by a constant tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    caps: Vec<Cap>,
    tail: Cap,
}

impl Profile {
    pub fn new(mut caps: Vec<Cap>, tail: Cap) -> Self {
        while caps.last() == Some(&tail) {
            caps.pop();
        }
        Profile { caps, tail }
    }

    /// All of `A_*`.
    pub fn full() -> Self {
        Profile::new(Vec::new(), Cap::Finite(0))
    }

    /// The ground field.
    pub fn trivial() -> Self {
        Profile::new(Vec::new(), Cap::Inf)
    }

    /// `P(n)_* = F2[z1, ..., zn]`.
    pub fn p(n: usize) -> Self {
        Profile::p_power(n, 0)
    }

    /// `P(n)^(s)_* = F2[z1^{2^s}, ..., zn^{2^s}]`.
    pub fn p_power(n: usize, s: u32) -> Self {
        Profile::new(vec![Cap::Finite(s); n], Cap::Inf)
    }

    /// `A_*^(s)`, the subalgebra of `2^s`-th powers.
    pub fn a_power(s: u32) -> Self {
        Profile::new(Vec::new(), Cap::Finite(s))
    }

    pub fn caps(&self) -> &[Cap] {
        &self.caps
    }

    pub fn tail(&self) -> Cap {
        self.tail
    }

    /// `h(i)`, 1-based.
    pub fn cap(&self, i: usize) -> Cap {
        self.caps.get(i.wrapping_sub(1)).copied().unwrap_or(self.tail)
    }

    pub fn allows(&self, m: &MilnorMonomial) -> bool {
        m.exponents().iter().enumerate().all(|(i, &e)| self.cap(i + 1).multiple(e))
    }

    /// Pointwise `self >= other`, i.e. the span of `self` lies in that of `other`.
    pub fn is_within(&self, other: &Profile) -> bool {
        let n = self.caps.len().max(other.caps.len()) + 1;
        (1..=n).all(|i| self.cap(i) >= other.cap(i)) && self.tail >= other.tail
    }

    /// Profile with every finite cap raised by `e`.
    pub fn doubled(&self, e: u32) -> Profile {
        Profile::new(self.caps.iter().map(|c| c.shifted(e)).collect(), self.tail.shifted(e))
    }

    pub fn monomials(&self, d: Degree) -> Vec<MilnorMonomial> {
        MilnorMonomial::basis(d).into_iter().filter(|m| self.allows(m)).collect()
    }

    /// Parse `P(n)`, `P(n)^(s)` or `A^(s)`; `A` alone is `A^(0)`.
    pub fn parse_preset(s: &str) -> Result<Profile> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown profile preset `{s}`"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        let (head, power) = match s.split_once("^(") {
            Some((h, rest)) => (h, Some(num(rest.strip_suffix(')').ok_or_else(bad)?)?)),
            None => (s, None),
        };
        if head == "A" {
            return Ok(Profile::a_power(power.unwrap_or(0)));
        }
        let n = head
            .strip_prefix("P(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)
            .and_then(num)?;
        Ok(Profile::p_power(n as usize, power.unwrap_or(0)))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.caps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; {}]", self.tail)
    }
}

/// Ordered monomial basis of the profile span in degrees `0..=max`.
pub fn subalgebra_basis(p: &Profile, max: Degree) -> GradedSpace {
    GradedSpace::new(
        (0..=max).map(|d| p.monomials(d).iter().map(ToString::to_string).collect()).collect(),
    )
}

/// First monomial of degree `<= max` in the span whose coproduct leaves
/// `B (x) B`, with the offending term.
pub fn subhopf_witness(p: &Profile, max: Degree) -> Option<(Degree, String)> {
    for d in 1..=max {
        for m in p.monomials(d) {
            for (a, b) in coproduct(&m).iter() {
                if !p.allows(a) || !p.allows(b) {
                    return Some((d, format!("psi({m}) contains {a}|{b}")));
                }
            }
        }
    }
    None
}

pub fn is_subhopf(p: &Profile, max: Degree) -> bool {
    subhopf_witness(p, max).is_none()
}

/// `num // den`: numerator monomials with exponents capped by the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientHopf {
    num: Profile,
    den: Profile,
}

impl QuotientHopf {
    pub fn new(num: Profile, den: Profile) -> Self {
        QuotientHopf { num, den }
    }

    /// Builds `num // den` after checking that the denominator is a subHopf
    /// algebra lying in the numerator, up to degree `max`.
    pub fn checked(num: Profile, den: Profile, max: Degree) -> Result<Self> {
        if let Some((degree, witness)) = subhopf_witness(&den, max) {
            return Err(Error::NotSubHopf { degree, witness });
        }
        if !den.is_within(&num) {
            return Err(Error::Precondition(format!("{den} is not contained in {num}")));
        }
        Ok(QuotientHopf { num, den })
    }

    /// `A_*` itself.
    pub fn dual_steenrod() -> Self {
        QuotientHopf::new(Profile::full(), Profile::trivial())
    }

    /// The ground field `F2`.
    pub fn ground() -> Self {
        QuotientHopf::new(Profile::full(), Profile::full())
    }

    /// A profile subalgebra viewed as a Hopf algebra in its own right.
    pub fn sub(p: Profile) -> Self {
        QuotientHopf::new(p, Profile::trivial())
    }

    /// `E_* = A_* // A_*^(1)`, exterior on the `z_i`.
    pub fn e() -> Self {
        QuotientHopf::new(Profile::full(), Profile::a_power(1))
    }

    /// `P(n)^(s)_* / (z1^{2^{s+t}}, z2^{2^{s+t-1}}, ..., zn^{2^{s+t+1-n}})`.
    pub fn staircase(n: usize, s: u32, t: u32) -> Self {
        let den = (1..=n)
            .map(|i| Cap::Finite(s + (t + 1).saturating_sub(i as u32)))
            .collect();
        QuotientHopf::new(Profile::p_power(n, s), Profile::new(den, Cap::Finite(0)))
    }

    /// The dual of the exterior subalgebra `E(n)` on `Sq(1), Sq(0,1), ...`,
    /// `n + 1` generators.
    pub fn e_n(n: usize) -> Self {
        QuotientHopf::new(Profile::p(n + 1), Profile::new(vec![Cap::Finite(1); n + 1], Cap::Finite(0)))
    }

    /// The dual of the finite subalgebra `A(n)` of the Steenrod algebra.
    pub fn a_n(n: usize) -> Self {
        QuotientHopf::staircase(n + 1, 0, n as u32 + 1)
    }

    /// Parse the presets accepted for profiles, plus `E`, `E(n)` and `A(n)`.
    pub fn parse_preset(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "E" {
            return Ok(QuotientHopf::e());
        }
        if let Some(n) = t.strip_prefix("E(").and_then(|r| r.strip_suffix(')')) {
            let n = n.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad preset `{t}`")))?;
            return Ok(QuotientHopf::e_n(n));
        }
        if let Some(n) = t.strip_prefix("A(").and_then(|r| r.strip_suffix(')')) {
            let n = n.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad preset `{t}`")))?;
            return Ok(QuotientHopf::a_n(n));
        }
        Ok(QuotientHopf::sub(Profile::parse_preset(t)?))
    }

    pub fn numerator(&self) -> &Profile {
        &self.num
    }

    pub fn denominator(&self) -> &Profile {
        &self.den
    }

    pub fn contains(&self, m: &MilnorMonomial) -> bool {
        self.num.allows(m)
            && m.exponents().iter().enumerate().all(|(i, &e)| self.den.cap(i + 1).below(e))
    }

    /// The quotient map on monomials.
    pub fn project(&self, m: &MilnorMonomial) -> Option<MilnorMonomial> {
        self.contains(m).then(|| m.clone())
    }

    pub fn monomials(&self, d: Degree) -> Vec<MilnorMonomial> {
        MilnorMonomial::basis(d).into_iter().filter(|m| self.contains(m)).collect()
    }

    pub fn basis(&self, max: Degree) -> GradedSpace {
        GradedSpace::new(
            (0..=max).map(|d| self.monomials(d).iter().map(ToString::to_string).collect()).collect(),
        )
    }

    pub fn dims(&self, max: Degree) -> Vec<usize> {
        (0..=max).map(|d| self.monomials(d).len()).collect()
    }

    /// Coproduct followed by the projection on both factors.
    pub fn coproduct(&self, m: &MilnorMonomial) -> DualTensor {
        let mut out = DualTensor::zero();
        for (a, b) in coproduct(m).iter() {
            if self.contains(a) && self.contains(b) {
                out.toggle(a.clone(), b.clone());
            }
        }
        out
    }

    /// Per-generator exponent bounds `(step, limit)`: allowed exponents are the
    /// multiples of `step` below `limit`. `None` when some generator is
    /// unbounded, i.e. the quotient is infinite.
    pub fn exponent_bounds(&self) -> Option<Vec<(u32, u32)>> {
        let mut out = Vec::new();
        let n = self.num.caps.len().max(self.den.caps.len());
        if self.num.tail != Cap::Inf && self.den.tail != Cap::Finite(0) {
            return None;
        }
        for i in 1..=n {
            let step = match self.num.cap(i) {
                Cap::Inf => {
                    out.push((1, 1));
                    continue;
                }
                Cap::Finite(h) => 1u32 << h,
            };
            let limit = match self.den.cap(i) {
                Cap::Inf => return None,
                Cap::Finite(h) => 1u32 << h,
            };
            out.push((step, limit));
        }
        while out.last().is_some_and(|&(s, l)| s >= l) {
            out.pop();
        }
        Some(out)
    }

    pub fn is_finite(&self) -> bool {
        self.exponent_bounds().is_some()
    }

    /// All basis monomials of a finite quotient, in increasing order.
    pub fn finite_basis(&self) -> Option<Vec<MilnorMonomial>> {
        let bounds = self.exponent_bounds()?;
        let mut out = vec![MilnorMonomial::unit()];
        for (i, &(step, limit)) in bounds.iter().enumerate() {
            let mut next = Vec::new();
            for m in &out {
                let mut e = 0;
                while e < limit {
                    next.push(m.mul(&MilnorMonomial::generator_power(i + 1, e)));
                    e += step;
                }
            }
            out = next;
        }
        out.sort();
        Some(out)
    }

    /// Top degree of a finite quotient.
    pub fn top_degree(&self) -> Option<Degree> {
        self.finite_basis().map(|b| b.iter().map(MilnorMonomial::degree).max().unwrap_or(0))
    }

    /// The `2^e`-fold Frobenius image, as a quotient of `A_*^(e)`.
    pub fn doubled(&self, e: u32) -> Self {
        QuotientHopf::new(self.num.doubled(e), self.den.doubled(e))
    }

    /// Checks that basis monomials are closed under the coproduct and that
    /// the complementary span is a coideal, up to degree `max`.
    pub fn hopf_quotient_witness(&self, max: Degree) -> Option<(Degree, String)> {
        if let Some(w) = subhopf_witness(&self.num, max) {
            return Some(w);
        }
        for d in 1..=max {
            for m in self.num.monomials(d) {
                if self.contains(&m) {
                    continue;
                }
                for (a, b) in coproduct(&m).iter() {
                    if self.contains(a) && self.contains(b) {
                        return Some((d, format!("psi({m}) contains {a}|{b} outside the ideal")));
                    }
                }
            }
        }
        None
    }
}

/// Result of the window freeness check for `sub` inside `amb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub sub_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub ambient_dims: Vec<usize>,
    /// Free generators per degree, lifted from the quotient basis.
    pub generators: Vec<Vec<MilnorMonomial>>,
    pub first_mismatch: Option<Degree>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Series product truncated to `len` terms.
pub fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|d| (0..=d).map(|i| a.get(i).unwrap_or(&0) * b.get(d - i).unwrap_or(&0)).sum())
        .collect()
}

/// Checks `dims(amb) = dims(sub) * dims(amb // sub)` and builds an explicit
/// basis of `amb` as a free `sub`-module, degree by degree.
pub fn verify_freeness(sub: &Profile, amb: &Profile, max: Degree) -> Result<FreenessReport> {
    if !sub.is_within(amb) {
        return Err(Error::Precondition(format!("{sub} is not contained in {amb}")));
    }
    for p in [sub, amb] {
        if let Some((degree, witness)) = subhopf_witness(p, max) {
            return Err(Error::NotSubHopf { degree, witness });
        }
    }
    let q = QuotientHopf::new(amb.clone(), sub.clone());
    let len = max as usize + 1;
    let sub_mons: Vec<Vec<MilnorMonomial>> = (0..=max).map(|d| sub.monomials(d)).collect();
    let sub_dims: Vec<usize> = sub_mons.iter().map(Vec::len).collect();
    let quotient_dims = q.dims(max);
    let amb_mons: Vec<Vec<MilnorMonomial>> = (0..=max).map(|d| amb.monomials(d)).collect();
    let ambient_dims: Vec<usize> = amb_mons.iter().map(Vec::len).collect();
    let conv = convolve(&sub_dims, &quotient_dims, len);
    let mut first_mismatch = (0..len).find(|&d| conv[d] != ambient_dims[d]).map(|d| d as Degree);

    let mut generators: Vec<Vec<MilnorMonomial>> = vec![Vec::new(); len];
    for d in 0..len {
        let index: BTreeMap<&MilnorMonomial, usize> =
            amb_mons[d].iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = amb_mons[d].len();
        let mut rows: Vec<BitVec> = Vec::new();
        let mut count = 0usize;
        for (gd, gens) in generators.iter().enumerate().take(d) {
            for g in gens {
                for b in &sub_mons[d - gd] {
                    let mut v = BitVec::zeros(n);
                    if let Some(&i) = index.get(&b.mul(g)) {
                        v.set(i, true);
                    }
                    rows.push(v);
                    count += 1;
                }
            }
        }
        let mut span = crate::f2::Subspace::new(n);
        for r in &rows {
            span.add(r);
        }
        let independent = span.dim() == count;
        for cand in q.monomials(d as Degree) {
            let mut v = BitVec::zeros(n);
            if let Some(&i) = index.get(&cand) {
                v.set(i, true);
            }
            if span.add(&v) {
                generators[d].push(cand);
            }
        }
        let ok = independent && span.dim() == n && generators[d].len() == quotient_dims[d];
        if !ok && first_mismatch.is_none_or(|m| m as usize > d) {
            first_mismatch = Some(d as Degree);
        }
    }
    Ok(FreenessReport { sub_dims, quotient_dims, ambient_dims, generators, first_mismatch })
}

/// A basis element of `M (x) N` in total degree `d`: `(deg of m, m, n)`.
pub type TensorIndex = (Degree, usize, usize);

/// The cotensor product, degree by degree, with explicit kernel vectors over
/// the tensor basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotensor {
    pub space: GradedSpace,
    pub tensor_basis: Vec<Vec<TensorIndex>>,
    pub kernels: Vec<Vec<BitVec>>,
}

impl Cotensor {
    pub fn dims(&self) -> Vec<usize> {
        self.space.dims()
    }
}

/// `M box_C N` for a right comodule `M` and a left comodule `N`, with the
/// coefficients of both coactions projected to `C`.
pub fn cotensor(m: &Comodule, c: &QuotientHopf, n: &Comodule, max: Degree) -> Result<Cotensor> {
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Precondition(String::from(
            "cotensor needs a right comodule on the left and a left comodule on the right",
        )));
    }
    for (name, x) in [("left factor", m), ("right factor", n)] {
        let top = x.max_degree();
        if top < max {
            return Err(Error::Precondition(format!(
                "{name} is populated only up to degree {top}, below {max}"
            )));
        }
    }
    let mut labels = Vec::new();
    let mut tensor_basis = Vec::new();
    let mut kernels = Vec::new();
    for d in 0..=max {
        let basis: Vec<TensorIndex> = (0..=d)
            .flat_map(|i| {
                let nd = n.dim(d - i);
                (0..m.dim(i)).flat_map(move |a| (0..nd).map(move |b| (i, a, b)))
            })
            .collect();
        type Key = (Degree, usize, MilnorMonomial, Degree, usize);
        let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
        let mut entries: Vec<Vec<usize>> = Vec::with_capacity(basis.len());
        for &(i, a, b) in &basis {
            let mut col: BTreeMap<usize, ()> = BTreeMap::new();
            let mut toggle = |k: Key, keys: &mut BTreeMap<Key, usize>| {
                let next = keys.len();
                let id = *keys.entry(k).or_insert(next);
                if col.remove(&id).is_none() {
                    col.insert(id, ());
                }
            };
            for (coef, (md, mi)) in m.coaction_terms(i, a) {
                if c.contains(&coef) {
                    toggle((md, mi, coef, d - i, b), &mut keys);
                }
            }
            for (coef, (nd, ni)) in n.coaction_terms(d - i, b) {
                if c.contains(&coef) {
                    toggle((i, a, coef, nd, ni), &mut keys);
                }
            }
            entries.push(col.into_keys().collect());
        }
        let mut mat = BitMatrix::zeros(keys.len(), basis.len());
        for (j, rows) in entries.iter().enumerate() {
            for &r in rows {
                mat.set(r, j, true);
            }
        }
        let ker = mat.kernel();
        labels.push(
            ker.iter()
                .map(|v| {
                    let parts: Vec<String> = v
                        .iter_ones()
                        .map(|j| {
                            let (i, a, b) = basis[j];
                            format!("{}|{}", m.label(i, a), n.label(d - i, b))
                        })
                        .collect();
                    parts.join(" + ")
                })
                .collect(),
        );
        tensor_basis.push(basis);
        kernels.push(ker);
    }
    Ok(Cotensor { space: GradedSpace::new(labels), tensor_basis, kernels })
}
