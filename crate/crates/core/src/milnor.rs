//! The dual Steenrod algebra `A_* = F2[z1, z2, ...]` with `|z_i| = 2^i - 1`,
//! and the Steenrod algebra `A` on its Milnor basis `Sq(r1, r2, ...)`.
//!
//! The coproduct on generators is `psi(z_n) = sum_{i=0..n} z_{n-i}^{2^i} (x) z_i`.
//! `Sq(R)` is the basis element dual to the monomial `z^R`, so products in `A`
//! are read off by transposing the coproduct of `A_*`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::graded::Degree;

/// Degree of the `i`-th polynomial generator (1-based).
#[inline]
pub fn generator_degree(i: usize) -> Degree {
    (1u32 << i) - 1
}

fn weighted_degree(exps: &[u32]) -> Degree {
    exps.iter().enumerate().map(|(i, &e)| e * generator_degree(i + 1)).sum()
}

fn canonical(mut exps: Vec<u32>) -> Vec<u32> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

/// All exponent tuples of the given weighted degree, in increasing tuple order.
pub fn exponent_tuples(degree: Degree) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: Degree, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == 0 {
            if left == 0 {
                out.push(canonical(cur.clone()));
            }
            return;
        }
        let g = generator_degree(i);
        for e in 0..=left / g {
            cur[i - 1] = e;
            rec(i - 1, left - e * g, cur, out);
        }
        cur[i - 1] = 0;
    }
    let mut top = 0;
    while generator_degree(top + 1) <= degree.max(1) {
        top += 1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; top];
    rec(top, degree, &mut cur, &mut out);
    out.sort();
    out
}

/// A monomial `z1^e1 z2^e2 ...` of `A_*`, trailing zero exponents stripped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MilnorMonomial(Vec<u32>);

impl MilnorMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        MilnorMonomial(canonical(exponents))
    }

    pub fn unit() -> Self {
        MilnorMonomial(Vec::new())
    }

    /// `z_i^power`, `i >= 1`; `i = 0` is the unit.
    pub fn generator_power(i: usize, power: u32) -> Self {
        if i == 0 || power == 0 {
            return Self::unit();
        }
        let mut e = vec![0; i];
        e[i - 1] = power;
        MilnorMonomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `z_i` (1-based).
    pub fn exponent(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Degree {
        weighted_degree(&self.0)
    }

    pub fn mul(&self, other: &MilnorMonomial) -> MilnorMonomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        MilnorMonomial(e)
    }

    /// Image under the `2^e`-th power Frobenius.
    pub fn frobenius(&self, e: u32) -> MilnorMonomial {
        MilnorMonomial(self.0.iter().map(|&x| x << e).collect())
    }

    /// All monomials of the given degree.
    pub fn basis(degree: Degree) -> Vec<MilnorMonomial> {
        let mut v: Vec<_> = exponent_tuples(degree).into_iter().map(MilnorMonomial).collect();
        v.sort();
        v
    }
}

impl Ord for MilnorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MilnorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An F2-linear combination of monomials of `A_*`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct DualElement(BTreeSet<MilnorMonomial>);

impl DualElement {
    pub fn zero() -> Self {
        DualElement(BTreeSet::new())
    }

    pub fn one() -> Self {
        Self::from(MilnorMonomial::unit())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Add a monomial (XOR into the support).
    pub fn toggle(&mut self, m: MilnorMonomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &DualElement) {
        for m in &other.0 {
            self.toggle(m.clone());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &MilnorMonomial> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, m: &MilnorMonomial) -> bool {
        self.0.contains(m)
    }

    /// Degree if the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<Degree> {
        let mut it = self.0.iter().map(MilnorMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn mul(&self, other: &DualElement) -> DualElement {
        let mut out = DualElement::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    /// Squaring is additive in characteristic 2.
    pub fn frobenius(&self, e: u32) -> DualElement {
        DualElement(self.0.iter().map(|m| m.frobenius(e)).collect())
    }

    pub fn pow(&self, mut n: u32) -> DualElement {
        let mut base = self.clone();
        let mut acc = DualElement::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.frobenius(1);
            n >>= 1;
        }
        acc
    }
}

impl From<MilnorMonomial> for DualElement {
    fn from(m: MilnorMonomial) -> Self {
        let mut s = BTreeSet::new();
        s.insert(m);
        DualElement(s)
    }
}

impl FromIterator<MilnorMonomial> for DualElement {
    fn from_iter<I: IntoIterator<Item = MilnorMonomial>>(iter: I) -> Self {
        let mut e = DualElement::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.0.iter())
    }
}

impl fmt::Debug for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_sum<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    let mut first = true;
    for t in items {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        write!(f, "{t}")?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// A sum of pure tensors `a (x) b` of monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DualTensor(BTreeSet<(MilnorMonomial, MilnorMonomial)>);

impl DualTensor {
    pub fn zero() -> Self {
        DualTensor(BTreeSet::new())
    }

    pub fn toggle(&mut self, a: MilnorMonomial, b: MilnorMonomial) {
        let k = (a, b);
        if !self.0.remove(&k) {
            self.0.insert(k);
        }
    }

    pub fn contains(&self, a: &MilnorMonomial, b: &MilnorMonomial) -> bool {
        self.0.contains(&(a.clone(), b.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(MilnorMonomial, MilnorMonomial)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Termwise product in `A_* (x) A_*`.
    pub fn mul(&self, other: &DualTensor) -> DualTensor {
        let mut out = DualTensor::zero();
        for (a, b) in &self.0 {
            for (c, d) in &other.0 {
                out.toggle(a.mul(c), b.mul(d));
            }
        }
        out
    }

    /// Terms ordered by the degree of the right factor, as printed.
    pub fn sorted_terms(&self) -> Vec<(MilnorMonomial, MilnorMonomial)> {
        let mut v: Vec<_> = self.0.iter().cloned().collect();
        v.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
        v
    }
}

impl fmt::Display for DualTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.sorted_terms().iter().map(|(a, b)| format!("{a}|{b}")))
    }
}

impl fmt::Debug for DualTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `psi(z_n^{2^k}) = sum_i z_{n-i}^{2^{i+k}} (x) z_i^{2^k}`.
fn generator_power_coproduct(n: usize, k: u32) -> Vec<(MilnorMonomial, MilnorMonomial)> {
    (0..=n)
        .map(|i| {
            (
                MilnorMonomial::generator_power(n - i, 1 << (i as u32 + k)),
                MilnorMonomial::generator_power(i, 1 << k),
            )
        })
        .collect()
}

/// Coproduct terms of `m` whose left factor has degree `left_degree`
/// (all terms when `None`).
pub fn coproduct_filtered(m: &MilnorMonomial, left_degree: Option<Degree>) -> DualTensor {
    let mut acc: BTreeMap<(MilnorMonomial, MilnorMonomial), ()> = BTreeMap::new();
    acc.insert((MilnorMonomial::unit(), MilnorMonomial::unit()), ());
    let cap = left_degree.unwrap_or(Degree::MAX);
    for (idx, &e) in m.exponents().iter().enumerate() {
        let n = idx + 1;
        for k in 0..32 {
            if e >> k & 1 == 0 {
                continue;
            }
            let factor = generator_power_coproduct(n, k);
            let mut next: BTreeMap<(MilnorMonomial, MilnorMonomial), ()> = BTreeMap::new();
            for (a, b) in acc.keys() {
                for (c, d) in &factor {
                    let l = a.mul(c);
                    if l.degree() > cap {
                        continue;
                    }
                    let key = (l, b.mul(d));
                    if next.remove(&key).is_none() {
                        next.insert(key, ());
                    }
                }
            }
            acc = next;
        }
    }
    let mut out = DualTensor::zero();
    for (a, b) in acc.into_keys() {
        if left_degree.is_none_or(|d| a.degree() == d) {
            out.toggle(a, b);
        }
    }
    out
}

pub fn coproduct(m: &MilnorMonomial) -> DualTensor {
    coproduct_filtered(m, None)
}

pub fn coproduct_element(x: &DualElement) -> DualTensor {
    let mut out = DualTensor::zero();
    for m in x.iter() {
        for (a, b) in coproduct(m).iter() {
            out.toggle(a.clone(), b.clone());
        }
    }
    out
}

/// Counit: 1 on the unit monomial, 0 elsewhere.
pub fn counit(m: &MilnorMonomial) -> bool {
    m.is_unit()
}

/// Conjugates `chi(z_n)` from `sum_{i=0..n} z_{n-i}^{2^i} chi(z_i) = 0`.
pub fn antipode_generators(up_to: usize) -> Vec<DualElement> {
    let mut chi = vec![DualElement::one()];
    for n in 1..=up_to {
        let mut c = DualElement::zero();
        for (i, ci) in chi.iter().enumerate().take(n) {
            let coeff = DualElement::from(MilnorMonomial::generator_power(n - i, 1 << i));
            c.add_assign(&coeff.mul(ci));
        }
        chi.push(c);
    }
    chi
}

pub fn antipode(m: &MilnorMonomial) -> DualElement {
    let chi = antipode_generators(m.exponents().len());
    let mut acc = DualElement::one();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            acc = acc.mul(&chi[i + 1].pow(e));
        }
    }
    acc
}

pub fn antipode_element(x: &DualElement) -> DualElement {
    let mut out = DualElement::zero();
    for m in x.iter() {
        out.add_assign(&antipode(m));
    }
    out
}

/// A Milnor basis element `Sq(r1, ..., rk)`, dual to the monomial `z^R`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sq(Vec<u32>);

impl Sq {
    pub fn new(r: Vec<u32>) -> Self {
        Sq(canonical(r))
    }

    pub fn unit() -> Self {
        Sq(Vec::new())
    }

    /// The Milnor primitive `P^a_b = Sq(0, .., 2^a)` with `2^a` in slot `b`.
    pub fn primitive(a: u32, b: usize) -> Self {
        let mut r = vec![0; b];
        r[b - 1] = 1 << a;
        Sq(r)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> Degree {
        weighted_degree(&self.0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// The dual monomial `z^R`.
    pub fn dual_monomial(&self) -> MilnorMonomial {
        MilnorMonomial(self.0.clone())
    }

    pub fn from_monomial(m: &MilnorMonomial) -> Self {
        Sq(m.0.clone())
    }

    pub fn basis(degree: Degree) -> Vec<Sq> {
        let mut v: Vec<_> = exponent_tuples(degree).into_iter().map(Sq).collect();
        v.sort();
        v
    }
}

impl Ord for Sq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Sq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Sq(0)");
        }
        f.write_str("Sq(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Sq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An F2-linear combination of Milnor basis elements.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SqElement(BTreeSet<Sq>);

impl SqElement {
    pub fn zero() -> Self {
        SqElement(BTreeSet::new())
    }

    pub fn one() -> Self {
        Self::from(Sq::unit())
    }

    pub fn toggle(&mut self, s: Sq) {
        if !self.0.remove(&s) {
            self.0.insert(s);
        }
    }

    pub fn add_assign(&mut self, other: &SqElement) {
        for s in &other.0 {
            self.toggle(s.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sq> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Sq) -> bool {
        self.0.contains(s)
    }

    pub fn degree(&self) -> Option<Degree> {
        let mut it = self.0.iter().map(Sq::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> Degree {
        self.0.iter().map(Sq::degree).max().unwrap_or(0)
    }
}

impl From<Sq> for SqElement {
    fn from(s: Sq) -> Self {
        let mut b = BTreeSet::new();
        b.insert(s);
        SqElement(b)
    }
}

impl FromIterator<Sq> for SqElement {
    fn from_iter<I: IntoIterator<Item = Sq>>(iter: I) -> Self {
        let mut e = SqElement::zero();
        for s in iter {
            e.toggle(s);
        }
        e
    }
}

impl fmt::Display for SqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.0.iter())
    }
}

impl fmt::Debug for SqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Sq(R) Sq(S)`: the sum of `Sq(T)` over `T` with `z^R (x) z^S` in `psi(z^T)`.
pub fn sq_basis_product(r: &Sq, s: &Sq) -> SqElement {
    let (a, b) = (r.dual_monomial(), s.dual_monomial());
    let n = a.degree() + b.degree();
    MilnorMonomial::basis(n)
        .into_iter()
        .filter(|t| coproduct_filtered(t, Some(a.degree())).contains(&a, &b))
        .map(|t| Sq::from_monomial(&t))
        .collect()
}

/// Product in the Milnor basis; fails if some pair of terms has total
/// degree above `max_degree`.
pub fn sq_mul(a: &SqElement, b: &SqElement, max_degree: Degree) -> Result<SqElement> {
    let top = a.max_degree() + b.max_degree();
    if !a.is_zero() && !b.is_zero() && top > max_degree {
        return Err(Error::WindowExceeded { degree: top, max: max_degree });
    }
    let mut out = SqElement::zero();
    for r in a.iter() {
        for s in b.iter() {
            out.add_assign(&sq_basis_product(r, s));
        }
    }
    Ok(out)
}

/// Verschiebung: halves every entry when all entries are even, else 0.
pub fn halve(a: &SqElement) -> SqElement {
    a.iter()
        .filter(|s| s.0.iter().all(|r| r % 2 == 0))
        .map(|s| Sq(s.0.iter().map(|r| r / 2).collect()))
        .collect()
}

/// Multiplication table of `A` in degrees `<= max_degree`, built once by
/// expanding the coproduct of every monomial up to that degree.
#[derive(Clone, Debug)]
pub struct MilnorProductTable {
    max_degree: Degree,
    table: BTreeMap<(Sq, Sq), SqElement>,
}

impl MilnorProductTable {
    pub fn new(max_degree: Degree) -> Self {
        let mut table: BTreeMap<(Sq, Sq), SqElement> = BTreeMap::new();
        for n in 0..=max_degree {
            for t in MilnorMonomial::basis(n) {
                let st = Sq::from_monomial(&t);
                for (a, b) in coproduct(&t).iter() {
                    table
                        .entry((Sq::from_monomial(a), Sq::from_monomial(b)))
                        .or_default()
                        .toggle(st.clone());
                }
            }
        }
        table.retain(|_, v| !v.is_zero());
        MilnorProductTable { max_degree, table }
    }

    pub fn max_degree(&self) -> Degree {
        self.max_degree
    }

    pub fn basis_product(&self, r: &Sq, s: &Sq) -> Result<SqElement> {
        let d = r.degree() + s.degree();
        if d > self.max_degree {
            return Err(Error::WindowExceeded { degree: d, max: self.max_degree });
        }
        Ok(self.table.get(&(r.clone(), s.clone())).cloned().unwrap_or_default())
    }

    pub fn mul(&self, a: &SqElement, b: &SqElement) -> Result<SqElement> {
        let mut out = SqElement::zero();
        for r in a.iter() {
            for s in b.iter() {
                out.add_assign(&self.basis_product(r, s)?);
            }
        }
        Ok(out)
    }
}

// ---- text syntax ----

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim().parse::<u32>().map_err(|_| parse_err(format!("bad integer `{s}`")))
}

/// Parse a monomial such as `z1^2 z3` or `1`.
pub fn parse_monomial(s: &str) -> Result<MilnorMonomial> {
    parse_named_monomial(s, 'z')
}

/// Parse a monomial in generators named `<prefix><index>`, e.g. `y1^2 y3`.
pub fn parse_named_monomial(s: &str, prefix: char) -> Result<MilnorMonomial> {
    let s = s.trim();
    if s == "1" {
        return Ok(MilnorMonomial::unit());
    }
    if s.is_empty() {
        return Err(parse_err("empty monomial"));
    }
    let mut acc = MilnorMonomial::unit();
    for tok in s.split_whitespace() {
        let rest = tok
            .strip_prefix(prefix)
            .ok_or_else(|| parse_err(format!("expected `{prefix}<i>`, found `{tok}`")))?;
        let (idx, pow) = match rest.split_once('^') {
            Some((i, p)) => (parse_u32(i)?, parse_u32(p)?),
            None => (parse_u32(rest)?, 1),
        };
        if idx == 0 {
            return Err(parse_err(format!("generator index 0 in `{tok}`")));
        }
        acc = acc.mul(&MilnorMonomial::generator_power(idx as usize, pow));
    }
    Ok(acc)
}

/// Parse a sum of monomials, e.g. `z1^2 z3 + z2`; `0` is the zero element.
pub fn parse_dual_element(s: &str) -> Result<DualElement> {
    let s = s.trim();
    if s == "0" {
        return Ok(DualElement::zero());
    }
    s.split('+').map(parse_monomial).collect()
}

/// Parse `Sq(3,1)`.
pub fn parse_sq(s: &str) -> Result<Sq> {
    let s = s.trim();
    let inner = s
        .strip_prefix("Sq(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("expected `Sq(...)`, found `{s}`")))?;
    let r = inner.split(',').map(parse_u32).collect::<Result<Vec<_>>>()?;
    Ok(Sq::new(r))
}

/// Parse a sum such as `Sq(3) + Sq(0,1)`; `0` is the zero element.
pub fn parse_sq_element(s: &str) -> Result<SqElement> {
    let s = s.trim();
    if s == "0" {
        return Ok(SqElement::zero());
    }
    s.split('+').map(parse_sq).collect()
}
