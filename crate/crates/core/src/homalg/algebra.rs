//! Finite graded algebras on Milnor-basis representatives: duals of finite
//! quotients of `A_*` and quotients `S//R` by normal subalgebras.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::comodule::FDModule;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, Subspace};
use crate::graded::Degree;
use crate::milnor::{coproduct, MilnorMonomial, Sq};
use crate::subquot::QuotientHopf;

/// Largest algebra dimension accepted by the table builders.
pub const MAX_ALGEBRA_DIM: usize = 1024;

/// A connected finite-dimensional graded algebra with a basis of Milnor
/// elements, full multiplication table and coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDAlgebra {
    name: String,
    basis: Vec<Sq>,
    degrees: Vec<Degree>,
    by_degree: Vec<Vec<usize>>,
    position: Vec<usize>,
    index: BTreeMap<Sq, usize>,
    products: Vec<Vec<u32>>,
    coproducts: Vec<Vec<(u32, u32)>>,
}

fn group_by_degree(degrees: &[Degree]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let top = degrees.iter().copied().max().unwrap_or(0) as usize;
    let mut out = vec![Vec::new(); top + 1];
    let mut pos = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        pos.push(out[d as usize].len());
        out[d as usize].push(i);
    }
    (out, pos)
}

impl FDAlgebra {
    /// The dual algebra of a finite quotient Hopf algebra of `A_*`: products
    /// are the transpose of the coproduct, coproducts the transpose of the
    /// monomial product.
    pub fn from_quotient(c: &QuotientHopf, name: &str) -> Result<Self> {
        let mons = c
            .finite_basis()
            .ok_or_else(|| Error::Precondition(format!("{name} is not finite")))?;
        if mons.len() > MAX_ALGEBRA_DIM {
            return Err(Error::TooLarge(format!("{name} has dimension {}", mons.len())));
        }
        let basis: Vec<Sq> = mons.iter().map(Sq::from_monomial).collect();
        let n = basis.len();
        let index: BTreeMap<Sq, usize> = basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mon_index: BTreeMap<&MilnorMonomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut products = vec![Vec::new(); n * n];
        for (t, m) in mons.iter().enumerate() {
            for (a, b) in coproduct(m).iter() {
                if let (Some(&i), Some(&j)) = (mon_index.get(a), mon_index.get(b)) {
                    products[i * n + j].push(t as u32);
                }
            }
        }
        let mut coproducts = vec![Vec::new(); n];
        for (t, m) in mons.iter().enumerate() {
            for (i, r) in mons.iter().enumerate() {
                let e = m.exponents();
                let f = r.exponents();
                if f.len() > e.len() || f.iter().zip(e).any(|(x, y)| x > y) {
                    continue;
                }
                let rest = MilnorMonomial::new(e.iter().enumerate().map(|(k, &y)| y - f.get(k).unwrap_or(&0)).collect());
                if let Some(&j) = mon_index.get(&rest) {
                    coproducts[t].push((i as u32, j as u32));
                }
            }
        }
        let degrees: Vec<Degree> = basis.iter().map(Sq::degree).collect();
        let (by_degree, position) = group_by_degree(&degrees);
        Ok(FDAlgebra {
            name: String::from(name),
            by_degree,
            position,
            degrees,
            basis,
            index,
            products,
            coproducts,
        })
    }

    /// `S // R = S / S R̄` for a normal subalgebra `R` (basis a subset of that
    /// of `S`). Basis representatives are the non-pivot basis elements of `S`.
    pub fn quotient(s: &FDAlgebra, r: &FDAlgebra, name: &str) -> Result<Self> {
        let rpos: Vec<usize> = r
            .basis
            .iter()
            .map(|x| {
                s.index_of(x)
                    .ok_or_else(|| Error::Precondition(format!("{x} of {} is not in {}", r.name, s.name)))
            })
            .collect::<Result<_>>()?;
        for (i, &pi) in rpos.iter().enumerate() {
            for (j, &pj) in rpos.iter().enumerate() {
                let want: Vec<usize> = r.mul_basis(i, j).iter().map(|&k| rpos[k as usize]).collect();
                let mut got: Vec<usize> = s.mul_basis(pi, pj).iter().map(|&k| k as usize).collect();
                let mut want = want;
                want.sort_unstable();
                got.sort_unstable();
                if want != got {
                    return Err(Error::Precondition(format!("{} is not a subalgebra of {}", r.name, s.name)));
                }
            }
        }
        let lq = LeftQuotient::new(s, &rpos);
        let top = s.top_degree();
        for d in 0..=top as usize {
            let right = &lq.right[d];
            let left = &lq.ideal[d];
            let same = left.dim() == right.dim() && left.basis().all(|v| right.contains(v));
            if !same {
                return Err(Error::Precondition(format!("{} is not normal in {} (degree {d})", r.name, s.name)));
            }
        }
        let reps = lq.reps.clone();
        let reduce = |v: &mut BitVec, d: usize| lq.reduce(v, d);
        let n = reps.len();
        let mut products = vec![Vec::new(); n * n];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                let d = (s.degrees[a] + s.degrees[b]) as usize;
                if d > top as usize {
                    continue;
                }
                let mut v = s.product_in_degree(a, b);
                let mut ks: Vec<u32> = reduce(&mut v, d).into_iter().map(|k| k as u32).collect();
                ks.sort_unstable();
                products[i * n + j] = ks;
            }
        }
        let mut coproducts = Vec::new();
        for &a in &reps {
            let mut acc: BTreeMap<(u32, u32), ()> = BTreeMap::new();
            for &(x, y) in &s.coproducts[a] {
                let (x, y) = (x as usize, y as usize);
                let (dx, dy) = (s.degrees[x] as usize, s.degrees[y] as usize);
                let mut vx = BitVec::unit(s.by_degree[dx].len(), s.position_in_degree(x));
                let mut vy = BitVec::unit(s.by_degree[dy].len(), s.position_in_degree(y));
                let px = reduce(&mut vx, dx);
                let py = reduce(&mut vy, dy);
                for &p in &px {
                    for &q in &py {
                        let k = (p as u32, q as u32);
                        if acc.remove(&k).is_none() {
                            acc.insert(k, ());
                        }
                    }
                }
            }
            coproducts.push(acc.into_keys().collect());
        }
        let basis: Vec<Sq> = reps.iter().map(|&i| s.basis[i].clone()).collect();
        let degrees: Vec<Degree> = reps.iter().map(|&i| s.degrees[i]).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let (by_degree, position) = group_by_degree(&degrees);
        Ok(FDAlgebra { name: String::from(name), by_degree, position, degrees, basis, index, products, coproducts })
    }

    /// The left ideal `S R̄` for a subalgebra `R`, with representatives of
    /// `S / S R̄`.
    pub fn left_quotient(&self, r: &FDAlgebra) -> Result<LeftQuotient> {
        let rpos: Vec<usize> = r
            .basis
            .iter()
            .map(|x| self.index_of(x).ok_or_else(|| Error::Precondition(format!("{x} is not in {}", self.name))))
            .collect::<Result<_>>()?;
        Ok(LeftQuotient::new(self, &rpos))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Sq] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Basis indices of degree `d`.
    pub fn in_degree(&self, d: i64) -> &[usize] {
        if d < 0 {
            return &[];
        }
        self.by_degree.get(d as usize).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, x: &Sq) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Position of `basis[i]` among the basis elements of its degree.
    pub fn position_in_degree(&self, i: usize) -> usize {
        self.position[i]
    }

    /// `basis[i] * basis[j]` as a sorted list of basis indices.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[u32] {
        &self.products[i * self.dim() + j]
    }

    /// `basis[i] * basis[j]` as a vector over the basis of its degree.
    pub fn product_in_degree(&self, i: usize, j: usize) -> BitVec {
        let d = (self.degrees[i] + self.degrees[j]) as usize;
        let n = self.by_degree.get(d).map_or(0, Vec::len);
        let mut v = BitVec::zeros(n);
        for &k in self.mul_basis(i, j) {
            v.flip(self.position_in_degree(k as usize));
        }
        v
    }

    /// Coproduct of `basis[i]` as index pairs.
    pub fn coproduct_basis(&self, i: usize) -> &[(u32, u32)] {
        &self.coproducts[i]
    }

    /// Top degree of the basis.
    pub fn top_degree(&self) -> Degree {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Indecomposable basis elements: a minimal generating set chosen among
    /// basis elements, lowest degree first.
    pub fn generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for d in 1..=self.top_degree() as usize {
            let mut dec = Subspace::new(self.by_degree[d].len());
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    let (a, b) = (self.degrees[i] as usize, self.degrees[j] as usize);
                    if a > 0 && b > 0 && a + b == d {
                        dec.add(&self.product_in_degree(i, j));
                    }
                }
            }
            for (k, &i) in self.by_degree[d].iter().enumerate() {
                if dec.add(&BitVec::unit(self.by_degree[d].len(), k)) {
                    out.push(i);
                }
            }
        }
        out
    }

    /// Associativity, unit and multiplicativity of the coproduct on all basis
    /// triples and pairs. Returns the first violation.
    pub fn axiom_failure(&self) -> Option<String> {
        let n = self.dim();
        if n == 0 || self.degrees[0] != 0 || self.in_degree(0).len() != 1 {
            return Some(String::from("not connected"));
        }
        let mul_list = |xs: &[u32], j: usize| -> Vec<u32> {
            let mut acc: BTreeMap<u32, ()> = BTreeMap::new();
            for &x in xs {
                for &k in self.mul_basis(x as usize, j) {
                    if acc.remove(&k).is_none() {
                        acc.insert(k, ());
                    }
                }
            }
            acc.into_keys().collect()
        };
        let list_mul = |i: usize, ys: &[u32]| -> Vec<u32> {
            let mut acc: BTreeMap<u32, ()> = BTreeMap::new();
            for &y in ys {
                for &k in self.mul_basis(i, y as usize) {
                    if acc.remove(&k).is_none() {
                        acc.insert(k, ());
                    }
                }
            }
            acc.into_keys().collect()
        };
        for i in 0..n {
            if self.mul_basis(0, i) != [i as u32] || self.mul_basis(i, 0) != [i as u32] {
                return Some(format!("unit fails on {}", self.basis[i]));
            }
            for j in 0..n {
                for k in 0..n {
                    if mul_list(self.mul_basis(i, j), k) != list_mul(i, self.mul_basis(j, k)) {
                        return Some(format!(
                            "associativity fails on {} {} {}",
                            self.basis[i], self.basis[j], self.basis[k]
                        ));
                    }
                }
            }
        }
        // Delta(xy) = Delta(x) Delta(y)
        for i in 0..n {
            for j in 0..n {
                let mut lhs: BTreeMap<(u32, u32), ()> = BTreeMap::new();
                let tog = |k: (u32, u32), m: &mut BTreeMap<(u32, u32), ()>| {
                    if m.remove(&k).is_none() {
                        m.insert(k, ());
                    }
                };
                for &t in self.mul_basis(i, j) {
                    for &p in self.coproduct_basis(t as usize) {
                        tog(p, &mut lhs);
                    }
                }
                let mut rhs = BTreeMap::new();
                for &(a, b) in self.coproduct_basis(i) {
                    for &(c, d) in self.coproduct_basis(j) {
                        for &x in self.mul_basis(a as usize, c as usize) {
                            for &y in self.mul_basis(b as usize, d as usize) {
                                tog((x, y), &mut rhs);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(format!("coproduct not multiplicative on {} {}", self.basis[i], self.basis[j]));
                }
            }
        }
        None
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(&self) -> FDModule {
        self.free_module(&[0])
    }

    /// `F2` in degree 0.
    pub fn trivial_module(&self) -> FDModule {
        FDModule::trivial(self.basis.clone())
    }

    /// Free module on generators of the given degrees; the basis is
    /// `(generator, algebra basis element)` in generator-major order.
    pub fn free_module(&self, gens: &[i32]) -> FDModule {
        let n = self.dim();
        let total = gens.len() * n;
        let mut degrees = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(total);
        for (g, &gd) in gens.iter().enumerate() {
            for b in &self.basis {
                degrees.push(gd + b.degree() as i32);
                labels.push(if gens.len() == 1 { format!("{b}") } else { format!("{b}*g{g}") });
            }
        }
        let action = (0..n)
            .map(|a| {
                let mut m = BitMatrix::zeros(total, total);
                for g in 0..gens.len() {
                    for b in 0..n {
                        for &k in self.mul_basis(a, b) {
                            m.set(g * n + k as usize, g * n + b, true);
                        }
                    }
                }
                m
            })
            .collect();
        FDModule::new(degrees, labels, self.basis.clone(), action).expect("free module is well formed")
    }

    /// The module re-expressed with operations in basis order; operations the
    /// module does not list act by zero.
    pub fn adapt(&self, m: &FDModule) -> FDModule {
        if m.ops() == self.basis.as_slice() {
            return m.clone();
        }
        m.restrict(&self.basis)
    }

    /// Checks that `m` is a module: the unit acts as the identity and
    /// `x(y v) = (xy) v` on basis elements.
    pub fn check_module(&self, m: &FDModule) -> Result<()> {
        let m = self.adapt(m);
        let n = m.dim();
        if *m.action(0) != BitMatrix::identity(n) {
            return Err(Error::Precondition(String::from("unit does not act as the identity")));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = m.action(i).mul(m.action(j));
                let mut rhs = BitMatrix::zeros(n, n);
                for &k in self.mul_basis(i, j) {
                    let a = m.action(k as usize);
                    for r in 0..n {
                        for c in 0..n {
                            if a.get(r, c) {
                                rhs.set(r, c, !rhs.get(r, c));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "action is not associative on {} {}",
                        self.basis[i], self.basis[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `S / S R̄` for a subalgebra `R` of `S`, per degree of `S`.
#[derive(Clone, Debug)]
pub struct LeftQuotient {
    ideal: Vec<Subspace>,
    right: Vec<Subspace>,
    coord: Vec<BTreeMap<usize, usize>>,
    /// Basis indices in `S` of the representatives, in degree order.
    pub reps: Vec<usize>,
}

impl LeftQuotient {
    fn new(s: &FDAlgebra, rpos: &[usize]) -> Self {
        let top = s.top_degree() as usize;
        let mut ideal: Vec<Subspace> = (0..=top).map(|d| Subspace::new(s.by_degree[d].len())).collect();
        let mut right = ideal.clone();
        for &ri in rpos.iter().filter(|&&x| s.degrees[x] > 0) {
            for si in 0..s.dim() {
                let d = (s.degrees[si] + s.degrees[ri]) as usize;
                if d <= top {
                    ideal[d].add(&s.product_in_degree(si, ri));
                    right[d].add(&s.product_in_degree(ri, si));
                }
            }
        }
        let mut reps = Vec::new();
        let mut coord = Vec::new();
        for (d, sub) in ideal.iter().enumerate() {
            let comp = sub.complement_indices();
            coord.push(comp.iter().enumerate().map(|(k, &c)| (c, reps.len() + k)).collect());
            reps.extend(comp.iter().map(|&c| s.by_degree[d][c]));
        }
        LeftQuotient { ideal, right, coord, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Reduces a vector over the degree-`d` basis of `S` and returns the
    /// representative indices of its class.
    pub fn reduce(&self, v: &mut BitVec, d: usize) -> Vec<usize> {
        self.ideal[d].reduce(v);
        v.iter_ones().map(|c| self.coord[d][&c]).collect()
    }

    /// Class of `s.basis[a] * s.basis[b]` as representative indices.
    pub fn class_of_product(&self, s: &FDAlgebra, a: usize, b: usize) -> Vec<usize> {
        let d = (s.degrees[a] + s.degrees[b]) as usize;
        if d >= self.ideal.len() {
            return Vec::new();
        }
        let mut v = s.product_in_degree(a, b);
        self.reduce(&mut v, d)
    }

    /// `S / S R̄` as a left `S`-module.
    pub fn module(&self, s: &FDAlgebra) -> FDModule {
        let n = self.dim();
        let degrees = self.reps.iter().map(|&i| s.degrees[i] as i32).collect();
        let labels = self.reps.iter().map(|&i| format!("{}", s.basis[i])).collect();
        let action = (0..s.dim())
            .map(|a| {
                let mut m = BitMatrix::zeros(n, n);
                for (c, &q) in self.reps.iter().enumerate() {
                    for k in self.class_of_product(s, a, q) {
                        m.set(k, c, true);
                    }
                }
                m
            })
            .collect();
        FDModule::new(degrees, labels, s.basis.clone(), action).expect("quotient module is well formed")
    }

    /// Right multiplication by `s.basis[y]` on representatives; a module map
    /// only when the ideal is two-sided.
    pub fn right_mul(&self, s: &FDAlgebra, y: usize) -> BitMatrix {
        let n = self.dim();
        let mut m = BitMatrix::zeros(n, n);
        for (c, &q) in self.reps.iter().enumerate() {
            for k in self.class_of_product(s, q, y) {
                m.set(k, c, true);
            }
        }
        m
    }
}

/// The dual of `A(n)_*`, i.e. the subalgebra `A(n)` of the Steenrod algebra.
pub fn build_an(n: usize) -> Result<FDAlgebra> {
    if n > 3 {
        return Err(Error::TooLarge(format!("A({n}) exceeds the size guard n <= 3")));
    }
    FDAlgebra::from_quotient(&QuotientHopf::a_n(n), &format!("A({n})"))
}

/// Outcome of the Poincaré duality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareReport {
    pub dim: usize,
    pub pd: Degree,
    /// First degree `k` whose pairing `H^k x H^{pd-k} -> H^pd` is degenerate.
    pub degenerate: Option<Degree>,
}

impl PoincareReport {
    pub fn perfect(&self) -> bool {
        self.degenerate.is_none()
    }
}

pub fn poincare_check(h: &FDAlgebra) -> PoincareReport {
    let pd = h.top_degree();
    let top = h.in_degree(pd as i64);
    let mut degenerate = if top.len() == 1 { None } else { Some(pd) };
    if degenerate.is_none() {
        for k in 0..=pd {
            let a = h.in_degree(k as i64);
            let b = h.in_degree((pd - k) as i64);
            if a.len() != b.len() {
                degenerate = Some(k);
                break;
            }
            let mut m = BitMatrix::zeros(a.len(), b.len());
            for (r, &i) in a.iter().enumerate() {
                for (c, &j) in b.iter().enumerate() {
                    m.set(r, c, h.product_in_degree(i, j).get(0));
                }
            }
            if m.rank() != a.len() {
                degenerate = Some(k);
                break;
            }
        }
    }
    PoincareReport { dim: h.dim(), pd, degenerate }
}
