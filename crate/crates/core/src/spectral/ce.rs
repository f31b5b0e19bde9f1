//! E2 pages of Cartan-Eilenberg spectral sequences for normal sequences of
//! finite algebras `R -> S -> S//R`, and their comodule counterparts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::comodule::{dualize_comodule, Comodule, FDModule};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, PreimageSolver, Subspace};
use crate::homalg::algebra::{FDAlgebra, LeftQuotient};
use crate::homalg::ext::{coboundary, cochain_basis, ext, ExtChart};
use crate::homalg::resolution::{lift_chain_map, ChainMap, Resolution};
use crate::subquot::{convolve, QuotientHopf};

/// Chain positions, homology and running offset of one `(t, u)` cell.
type Cell = (Vec<(usize, usize)>, Homology, usize);

/// `R -> S -> S//R` with `R` normal in `S`.
#[derive(Clone, Debug)]
pub struct NormalSequence {
    pub s: FDAlgebra,
    pub r: FDAlgebra,
    pub quotient: FDAlgebra,
    lq: LeftQuotient,
}

impl NormalSequence {
    /// Checks normality and `dims(S) = dims(R) * dims(S//R)`.
    pub fn new(s: FDAlgebra, r: FDAlgebra) -> Result<Self> {
        let name = format!("{}//{}", s.name(), r.name());
        let quotient = FDAlgebra::quotient(&s, &r, &name)?;
        let lq = s.left_quotient(&r)?;
        let len = s.top_degree() as usize + 1;
        let conv = convolve(&r.dims(), &quotient.dims(), len);
        let dims = s.dims();
        if let Some(d) = (0..len).find(|&d| conv[d] != dims[d]) {
            return Err(Error::FreenessMismatch { degree: d as u32, expected: dims[d], found: conv[d] });
        }
        Ok(NormalSequence { s, r, quotient, lq })
    }

    /// The sequence dual to a Hopf quotient `h -> k` of finite quotients of `A_*`.
    pub fn from_quotients(h: &QuotientHopf, k: &QuotientHopf) -> Result<Self> {
        NormalSequence::new(FDAlgebra::from_quotient(h, "S")?, FDAlgebra::from_quotient(k, "R")?)
    }

    /// An `S//R`-module viewed as an `S`-module.
    pub fn pullback(&self, l: &FDModule) -> FDModule {
        let l = self.quotient.adapt(l);
        let n = l.dim();
        let action = (0..self.s.dim())
            .map(|a| {
                let mut m = BitMatrix::zeros(n, n);
                // the class of a = a * 1
                let unit = self.s.in_degree(0)[0];
                for k in self.lq.class_of_product(&self.s, a, unit) {
                    m = add(&m, l.action(k));
                }
                m
            })
            .collect();
        FDModule::new(l.degrees().to_vec(), l.labels().to_vec(), self.s.basis().to_vec(), action)
            .expect("pullback keeps the shape")
    }

    /// An `S`-module on which the augmentation ideal of `R` acts trivially,
    /// viewed as an `S//R`-module.
    pub fn descend(&self, m: &FDModule) -> Result<FDModule> {
        let m = self.s.adapt(m);
        for x in self.r.basis().iter().filter(|x| x.degree() > 0) {
            let i = self.s.index_of(x).expect("R lies in S");
            if !m.action(i).is_zero() {
                return Err(Error::Precondition(format!("{x} acts nontrivially, so R does not act trivially")));
            }
        }
        Ok(m.restrict(self.quotient.basis()))
    }
}

fn add(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let mut out = a.clone();
    for r in 0..b.rows() {
        for c in b.row(r).iter_ones() {
            out.set(r, c, !out.get(r, c));
        }
    }
    out
}

/// Cycles modulo boundaries with chosen representatives.
struct Homology {
    reps: Vec<BitVec>,
    solver: PreimageSolver,
    boundary_rank: usize,
}

impl Homology {
    fn new(cycles: Vec<BitVec>, boundaries: Vec<BitVec>, dim: usize) -> Self {
        let mut span = Subspace::new(dim);
        let mut gens = Vec::new();
        for b in boundaries {
            if span.add(&b) {
                gens.push(b);
            }
        }
        let boundary_rank = gens.len();
        let mut reps = Vec::new();
        for z in cycles {
            if span.add(&z) {
                reps.push(z.clone());
                gens.push(z);
            }
        }
        Homology { solver: PreimageSolver::new(&gens, dim), reps, boundary_rank }
    }

    /// Coordinates of a cycle's class in the representatives.
    fn coords(&self, v: &BitVec) -> Option<BitVec> {
        let x = self.solver.solve(v)?;
        Some(x.slice(self.boundary_rank, self.reps.len()))
    }
}

/// `f o phi` for a cocycle `f` in `Hom(F_t, Sigma^u M)` and a chain map `phi`
/// raising degree by `dy`.
#[allow(clippy::too_many_arguments)]
fn compose(
    res: &Resolution<'_>,
    m: &FDModule,
    t: usize,
    here: &[(usize, usize)],
    f: &BitVec,
    phi: &ChainMap,
    dy: i32,
    there: &[(usize, usize)],
) -> Result<BitVec> {
    let mut by_gen: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in f.iter_ones() {
        let (g, n) = here[i];
        by_gen.entry(g).or_default().push(n);
    }
    let mut out = BitVec::zeros(there.len());
    let mut bases = BTreeMap::new();
    for (row, &(g1, n1)) in there.iter().enumerate() {
        let gd = res.gens(t)[g1] + dy;
        let basis = bases.entry(gd).or_insert_with(|| res.basis(t, gd));
        let img = &phi.images[t][g1];
        if img.len() != basis.len() {
            return Err(Error::Truncation { requested: gd.max(0) as u32, populated: res.max_deg().max(0) as u32 });
        }
        let mut bit = false;
        for i in img.iter_ones() {
            let (g, b) = basis.elems[i];
            if let Some(ns) = by_gen.get(&g) {
                let a = m.action(b);
                bit ^= ns.iter().filter(|&&n| a.get(n1, n)).count() % 2 == 1;
            }
        }
        out.set(row, bit);
    }
    Ok(out)
}

/// `Ext^t_R(F2, M) = Ext^t_S(S//R, M)` for `t <= max_t` as `S//R`-modules,
/// the class of internal degree `u` placed in module degree `-u`, for
/// `u <= max_u`. The action of `y` is induced by right multiplication by `y`
/// on `S//R`, lifted to the minimal resolution.
pub fn inner_ext_modules(seq: &NormalSequence, m: &FDModule, max_t: usize, max_u: i32) -> Result<Vec<FDModule>> {
    let s = &seq.s;
    let m = s.adapt(m);
    s.check_module(&m)?;
    let mmax = m.max_degree().unwrap_or(0);
    let qmod = seq.lq.module(s);
    let res = Resolution::new(s, &qmod, max_t + 1, max_u + mmax)?;
    let maps: Vec<ChainMap> = seq
        .lq
        .reps
        .iter()
        .map(|&y| lift_chain_map(&res, &res, &seq.lq.right_mul(s, y), s.degree(y) as i32, max_t))
        .collect::<Result<_>>()?;
    let min_u = res.min_deg() - mmax;
    let mut out = Vec::new();
    for t in 0..=max_t {
        let mut cells: BTreeMap<i32, Cell> = BTreeMap::new();
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for u in min_u..=max_u {
            let here = cochain_basis(&res, &m, t, u);
            let next = cochain_basis(&res, &m, t + 1, u);
            let cycles = coboundary(&res, &m, t, u, &here, &next).kernel();
            let boundaries = if t == 0 {
                Vec::new()
            } else {
                let prev = cochain_basis(&res, &m, t - 1, u);
                let dp = coboundary(&res, &m, t - 1, u, &prev, &here);
                (0..prev.len()).map(|c| dp.column(c)).collect()
            };
            let h = Homology::new(cycles, boundaries, here.len());
            let offset = degrees.len();
            for k in 0..h.reps.len() {
                degrees.push(-u);
                labels.push(format!("e{t}_{u}_{k}"));
            }
            cells.insert(u, (here, h, offset));
        }
        let n = degrees.len();
        let mut action = Vec::new();
        for (yi, &y) in seq.lq.reps.iter().enumerate() {
            let dy = s.degree(y) as i32;
            let mut mat = BitMatrix::zeros(n, n);
            for (&u, (here, h, off)) in &cells {
                let Some((there, ht, toff)) = cells.get(&(u - dy)) else { continue };
                for (k, z) in h.reps.iter().enumerate() {
                    let w = compose(&res, &m, t, here, z, &maps[yi], dy, there)?;
                    let c = ht
                        .coords(&w)
                        .ok_or_else(|| Error::Precondition(format!("induced action leaves the cocycles at t = {t}, u = {u}")))?;
                    for j in c.iter_ones() {
                        mat.set(toff + j, off + k, true);
                    }
                }
            }
            action.push(mat);
        }
        let module = FDModule::new(degrees, labels, seq.quotient.basis().to_vec(), action)?;
        seq.quotient
            .check_module(&module)
            .map_err(|e| Error::Precondition(format!("induced action on Ext^{t}: {e}")))?;
        out.push(module);
    }
    Ok(out)
}

/// `Tor^S_t(S//R, N)` for `t <= max_t` as left `S//R`-modules, complete in
/// every degree.
pub fn tor_modules(seq: &NormalSequence, n: &FDModule, max_t: usize) -> Result<Vec<FDModule>> {
    let (s, q) = (&seq.s, &seq.quotient);
    let n = s.adapt(n);
    s.check_module(&n)?;
    let top = s.top_degree() as i32;
    let nmax = n.max_degree().unwrap_or(0);
    let res = Resolution::new(s, &n, max_t + 1, nmax + (max_t as i32 + 1) * top)?;
    let cell = |t: usize, d: i32| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (g, &gd) in res.gens(t).iter().enumerate() {
            for &qi in q.in_degree((d - gd) as i64) {
                out.push((g, qi));
            }
        }
        out
    };
    // 1 (x) d on (S//R) (x)_S F_t -> (S//R) (x)_S F_{t-1}
    let diff = |t: usize, src: &[(usize, usize)], tgt: &[(usize, usize)]| -> BitMatrix {
        let pos: BTreeMap<(usize, usize), usize> = tgt.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut m = BitMatrix::zeros(tgt.len(), src.len());
        for (c, &(g, qi)) in src.iter().enumerate() {
            let basis = res.basis(t - 1, res.gens(t)[g]);
            for i in res.image(t, g).iter_ones() {
                let (h, b) = basis.elems[i];
                for k in seq.lq.class_of_product(s, seq.lq.reps[qi], b) {
                    let r = pos[&(h, k)];
                    m.set(r, c, !m.get(r, c));
                }
            }
        }
        m
    };
    let mut out = Vec::new();
    for t in 0..=max_t {
        let hi = nmax + t as i32 * top + q.top_degree() as i32;
        let mut cells: BTreeMap<i32, Cell> = BTreeMap::new();
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for d in res.min_deg()..=hi {
            let here = cell(t, d);
            let cycles = if t == 0 {
                (0..here.len()).map(|i| BitVec::unit(here.len(), i)).collect()
            } else {
                diff(t, &here, &cell(t - 1, d)).kernel()
            };
            let above = cell(t + 1, d);
            let db = diff(t + 1, &above, &here);
            let boundaries = (0..above.len()).map(|c| db.column(c)).collect();
            let h = Homology::new(cycles, boundaries, here.len());
            let offset = degrees.len();
            for k in 0..h.reps.len() {
                degrees.push(d);
                labels.push(format!("x{t}_{d}_{k}"));
            }
            cells.insert(d, (here, h, offset));
        }
        let dim = degrees.len();
        let mut action = Vec::new();
        for y in 0..q.dim() {
            let dy = q.degree(y) as i32;
            let mut mat = BitMatrix::zeros(dim, dim);
            for (&d, (here, h, off)) in &cells {
                let Some((there, ht, toff)) = cells.get(&(d + dy)) else { continue };
                let pos: BTreeMap<(usize, usize), usize> = there.iter().enumerate().map(|(i, &k)| (k, i)).collect();
                for (k, z) in h.reps.iter().enumerate() {
                    let mut w = BitVec::zeros(there.len());
                    for i in z.iter_ones() {
                        let (g, qi) = here[i];
                        for &p in q.mul_basis(y, qi) {
                            w.flip(pos[&(g, p as usize)]);
                        }
                    }
                    let c = ht
                        .coords(&w)
                        .ok_or_else(|| Error::Precondition(format!("action leaves the cycles of Tor_{t}")))?;
                    for j in c.iter_ones() {
                        mat.set(toff + j, off + k, true);
                    }
                }
            }
            action.push(mat);
        }
        let module = FDModule::new(degrees, labels, q.basis().to_vec(), action)?;
        q.check_module(&module)?;
        out.push(module);
    }
    Ok(out)
}

/// Which spectral sequence a page belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum E2Source {
    /// `Ext_{S//R}(L, Ext_R(F2, M)) => Ext_S(L, M)`.
    Algebras,
    /// `Coext_{K\\H}(M, Cotor_K(F2, N)) => Coext_H(M, N)`.
    ComoduleFirst,
    /// `Coext_{K\\H}(Cotor_K(F2, M), N) => Coext_H(M, N)`.
    ComoduleSecond,
}

/// `E2^{s,t}` in internal degree `u` for `s + t <= max_n`, `u <= max_u`,
/// together with the directly computed abutment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    pub source: E2Source,
    pub max_n: usize,
    pub max_u: i32,
    dims: BTreeMap<(usize, usize, i32), usize>,
    pub abutment: ExtChart,
    /// Whether the trivial-coaction form agrees, when it applies.
    pub factorized_agrees: Option<bool>,
}

impl E2Page {
    fn from_rows(source: E2Source, max_n: usize, max_u: i32, rows: &[ExtChart], abutment: ExtChart) -> Self {
        let mut dims = BTreeMap::new();
        for (t, chart) in rows.iter().enumerate() {
            for (s, u, d) in chart.entries() {
                if s + t <= max_n && u <= max_u {
                    dims.insert((s, t, u), d);
                }
            }
        }
        E2Page { source, max_n, max_u, dims, abutment, factorized_agrees: None }
    }

    pub fn get(&self, s: usize, t: usize, u: i32) -> usize {
        self.dims.get(&(s, t, u)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(s, t, u, dim)` ordered by `s`, `t`, `u`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i32, usize)> + '_ {
        self.dims.iter().map(|(&(s, t, u), &d)| (s, t, u, d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `sum_{s+t=n} dim E2^{s,t,u}`.
    pub fn diagonal(&self, n: usize, u: i32) -> usize {
        (0..=n).map(|s| self.get(s, n - s, u)).sum()
    }

    /// Every entry lies in `s, t >= 0` with `s + t <= max_n`.
    pub fn first_quadrant(&self) -> bool {
        self.dims.keys().all(|&(s, t, _)| s + t <= self.max_n)
    }

    /// First `(n, u)` where the abutment exceeds the total E2 dimension.
    pub fn subquotient_failure(&self) -> Option<(usize, i32)> {
        let lo = self.abutment.min_t.min(self.dims.keys().map(|k| k.2).min().unwrap_or(0));
        for n in 0..=self.max_n {
            for u in lo..=self.max_u {
                if self.diagonal(n, u) < self.abutment.get(n, u) {
                    return Some((n, u));
                }
            }
        }
        None
    }

    /// A zero page forces a zero abutment.
    pub fn zero_propagation_holds(&self) -> bool {
        !self.is_zero() || self.abutment.is_zero()
    }

    /// One `s t u dim` line per nonzero entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, t, u, d) in self.entries() {
            out.push_str(&format!("{s} {t} {u} {d}\n"));
        }
        out
    }
}

/// E2 of `Ext^s_{S//R}(L, Ext^t_R(F2, M)) => Ext^{s+t}_S(L, M)`.
pub fn ce_e2_algebras(seq: &NormalSequence, l: &FDModule, m: &FDModule, max_n: usize, max_u: i32) -> Result<E2Page> {
    let l = seq.quotient.adapt(l);
    seq.quotient.check_module(&l)?;
    let lmin = l.min_degree().unwrap_or(0);
    let inner = inner_ext_modules(seq, m, max_n, max_u + (-lmin).max(0))?;
    let rows = inner
        .iter()
        .enumerate()
        .map(|(t, e)| ext(&seq.quotient, &l, e, max_n - t, max_u))
        .collect::<Result<Vec<_>>>()?;
    let abutment = ext(&seq.s, &seq.pullback(&l), m, max_n, max_u)?;
    Ok(E2Page::from_rows(E2Source::Algebras, max_n, max_u, &rows, abutment))
}

/// `A (x) B` with the diagonal action through the coproduct of `alg`.
pub fn tensor_module(alg: &FDAlgebra, a: &FDModule, b: &FDModule) -> Result<FDModule> {
    let (a, b) = (alg.adapt(a), alg.adapt(b));
    let (na, nb) = (a.dim(), b.dim());
    let mut degrees = Vec::with_capacity(na * nb);
    let mut labels = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            degrees.push(a.degree(i) + b.degree(j));
            labels.push(format!("{}*{}", a.labels()[i], b.labels()[j]));
        }
    }
    let action = (0..alg.dim())
        .map(|y| {
            let mut m = BitMatrix::zeros(na * nb, na * nb);
            for &(y1, y2) in alg.coproduct_basis(y) {
                let (p, q) = (a.action(y1 as usize), b.action(y2 as usize));
                for i in 0..na {
                    for j in 0..nb {
                        for i2 in p.column(i).iter_ones() {
                            for j2 in q.column(j).iter_ones() {
                                let (r, c) = (i2 * nb + j2, i * nb + j);
                                m.set(r, c, !m.get(r, c));
                            }
                        }
                    }
                }
            }
            m
        })
        .collect();
    let out = FDModule::new(degrees, labels, alg.basis().to_vec(), action)?;
    alg.check_module(&out)?;
    Ok(out)
}

fn dual_over(m: &Comodule, h: &QuotientHopf) -> Result<FDModule> {
    dualize_comodule(m, h, m.max_degree())
}

/// E2 of `Coext^s_{K\\H}(M, Cotor^t_K(F2, N)) => Coext^{s+t}_H(M, N)` for a
/// finite quotient `H -> K` whose dual inclusion is normal. `M` is an
/// `H`-comodule whose coaction factors through `K\\H`.
pub fn ce_e2_comodule_first(
    h: &QuotientHopf,
    k: &QuotientHopf,
    m: &Comodule,
    n: &Comodule,
    max_n: usize,
    max_u: i32,
) -> Result<E2Page> {
    let seq = NormalSequence::from_quotients(h, k)?;
    let mstar_h = dual_over(m, h)?;
    let mstar = seq.descend(&mstar_h)?;
    let nstar = dual_over(n, h)?;
    let xs = tor_modules(&seq, &nstar, max_n)?;
    let rows = xs
        .iter()
        .enumerate()
        .map(|(t, x)| ext(&seq.quotient, x, &mstar, max_n - t, max_u))
        .collect::<Result<Vec<_>>>()?;
    let abutment = ext(&seq.s, &nstar, &mstar_h, max_n, max_u)?;
    let mut page = E2Page::from_rows(E2Source::ComoduleFirst, max_n, max_u, &rows, abutment);
    if let Ok(nq) = seq.descend(&nstar) {
        let ks = tor_modules(&seq, &seq.s.trivial_module(), max_n)?;
        let rows2 = ks
            .iter()
            .enumerate()
            .map(|(t, x)| ext(&seq.quotient, &tensor_module(&seq.quotient, x, &nq)?, &mstar, max_n - t, max_u))
            .collect::<Result<Vec<_>>>()?;
        let other = E2Page::from_rows(E2Source::ComoduleFirst, max_n, max_u, &rows2, page.abutment.clone());
        page.factorized_agrees = Some(other.dims == page.dims);
    }
    Ok(page)
}

/// Internal degree past which `Ext^t_S(S//R, M)` vanishes for `t <= max_t`:
/// generators of the minimal resolution of `S//R` in stage `t` sit at or
/// below `(t + 1) top(S)`.
fn complete_bound(seq: &NormalSequence, m: &FDModule, max_t: usize) -> i32 {
    (max_t as i32 + 1) * seq.s.top_degree() as i32 - m.min_degree().unwrap_or(0)
}

/// E2 of `Coext^s_{K\\H}(Cotor^t_K(F2, M), N) => Coext^{s+t}_H(M, N)`. `M`
/// must be coherent (completely populated), `N` an `H`-comodule whose
/// coaction factors through `K\\H`. On duals the inner term is
/// `Ext^t_R(F2, M^*)`, the derived functor of the right adjoint to
/// restriction along `S -> S//R`.
pub fn ce_e2_comodule_second(
    h: &QuotientHopf,
    k: &QuotientHopf,
    m: &Comodule,
    n: &Comodule,
    max_n: usize,
    max_u: i32,
) -> Result<E2Page> {
    if !m.is_complete() {
        return Err(Error::Precondition(String::from("M is not coherent: its coaction is only known in a window")));
    }
    let seq = NormalSequence::from_quotients(h, k)?;
    let mstar = dual_over(m, h)?;
    let nstar_h = dual_over(n, h)?;
    let nstar = seq.descend(&nstar_h)?;
    let ys = inner_ext_modules(&seq, &mstar, max_n, complete_bound(&seq, &mstar, max_n))?;
    let rows = ys
        .iter()
        .enumerate()
        .map(|(t, y)| ext(&seq.quotient, &nstar, y, max_n - t, max_u))
        .collect::<Result<Vec<_>>>()?;
    let abutment = ext(&seq.s, &nstar_h, &mstar, max_n, max_u)?;
    let mut page = E2Page::from_rows(E2Source::ComoduleSecond, max_n, max_u, &rows, abutment);
    if let Ok(mq) = seq.descend(&mstar) {
        let triv = seq.s.trivial_module();
        let ks = inner_ext_modules(&seq, &triv, max_n, complete_bound(&seq, &triv, max_n))?;
        let rows2 = ks
            .iter()
            .enumerate()
            .map(|(t, x)| ext(&seq.quotient, &nstar, &tensor_module(&seq.quotient, x, &mq)?, max_n - t, max_u))
            .collect::<Result<Vec<_>>>()?;
        let other = E2Page::from_rows(E2Source::ComoduleSecond, max_n, max_u, &rows2, page.abutment.clone());
        page.factorized_agrees = Some(other.dims == page.dims);
    }
    Ok(page)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::Side;
    use crate::homalg::algebra::build_an;
    use alloc::vec;

    fn e1() -> FDAlgebra {
        FDAlgebra::from_quotient(&QuotientHopf::e_n(1), "E(1)").unwrap()
    }

    fn ground() -> FDAlgebra {
        FDAlgebra::from_quotient(&QuotientHopf::ground(), "k").unwrap()
    }

    #[test]
    fn a0_is_not_normal_in_a1() {
        let err = NormalSequence::new(build_an(1).unwrap(), build_an(0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("not normal")), "{err}");
    }

    #[test]
    fn e1_in_a1_is_normal_with_exterior_quotient() {
        let seq = NormalSequence::new(build_an(1).unwrap(), e1()).unwrap();
        assert_eq!(seq.quotient.dims(), vec![1, 0, 1]);
    }

    #[test]
    fn r_equal_s_collapses_to_column() {
        let a = build_an(1).unwrap();
        let seq = NormalSequence::new(a.clone(), a.clone()).unwrap();
        let k = seq.quotient.trivial_module();
        let page = ce_e2_algebras(&seq, &k, &a.trivial_module(), 5, 12).unwrap();
        let direct = ext(&a, &a.trivial_module(), &a.trivial_module(), 5, 12).unwrap();
        assert!(page.entries().all(|(s, ..)| s == 0));
        for (t, u, d) in direct.entries() {
            assert_eq!(page.get(0, t, u), d, "t = {t}, u = {u}");
        }
        assert_eq!(page.entries().count(), direct.entries().count());
    }

    #[test]
    fn r_trivial_collapses_to_row() {
        let a = build_an(1).unwrap();
        let seq = NormalSequence::new(a.clone(), ground()).unwrap();
        let k = a.trivial_module();
        let page = ce_e2_algebras(&seq, &k, &k, 5, 12).unwrap();
        assert!(page.entries().all(|(_, t, ..)| t == 0));
        for (s, u, d) in page.abutment.entries() {
            assert_eq!(page.get(s, 0, u), d);
        }
        assert!(page.subquotient_failure().is_none());
    }

    #[test]
    fn e1_over_a1_satisfies_subquotient_bound() {
        let seq = NormalSequence::new(build_an(1).unwrap(), e1()).unwrap();
        let k = seq.quotient.trivial_module();
        let page = ce_e2_algebras(&seq, &k, &seq.s.trivial_module(), 6, 12).unwrap();
        assert!(page.first_quadrant());
        assert_eq!(page.subquotient_failure(), None);
        // h1 is detected by the quotient E[Sq(2)], h0 by E(1)
        assert_eq!(page.get(1, 0, 2), 1);
        assert_eq!(page.get(0, 1, 1), 1);
        // Sq(2) carries v1 to h0, so v1 is not invariant
        assert_eq!(page.get(0, 1, 3), 0);
    }

    #[test]
    fn a0_in_e1_collapses() {
        let seq = NormalSequence::new(e1(), build_an(0).unwrap()).unwrap();
        let k = seq.quotient.trivial_module();
        let page = ce_e2_algebras(&seq, &k, &seq.s.trivial_module(), 5, 15).unwrap();
        for n in 0..=5 {
            for u in 0..=15 {
                assert_eq!(page.diagonal(n, u), page.abutment.get(n, u), "n = {n}, u = {u}");
            }
        }
    }

    #[test]
    fn comodule_first_forms_agree() {
        let h = QuotientHopf::e_n(1);
        let k = QuotientHopf::a_n(0);
        let f = Comodule::trivial(Side::Left, 0);
        let page = ce_e2_comodule_first(&h, &k, &f, &f, 5, 12).unwrap();
        assert_eq!(page.factorized_agrees, Some(true));
        assert_eq!(page.subquotient_failure(), None);
    }

    #[test]
    fn comodule_first_degenerate_quotients() {
        let h = QuotientHopf::e_n(1);
        let f = Comodule::trivial(Side::Left, 0);
        // K = k: the t = 0 row is Coext_H
        let row = ce_e2_comodule_first(&h, &QuotientHopf::ground(), &f, &f, 4, 10).unwrap();
        assert!(row.entries().all(|(_, t, ..)| t == 0));
        for (s, u, d) in row.abutment.entries() {
            assert_eq!(row.get(s, 0, u), d);
        }
        // K = H: only the s = 0 column survives
        let col = ce_e2_comodule_first(&h, &h, &f, &f, 4, 10).unwrap();
        assert!(col.entries().all(|(s, ..)| s == 0));
        assert_eq!(col.subquotient_failure(), None);
    }

    #[test]
    fn comodule_second_cofree_is_concentrated() {
        let h = QuotientHopf::e_n(1);
        let k = QuotientHopf::a_n(0);
        let cofree = Comodule::regular(&h, Side::Left, h.top_degree().unwrap());
        let f = Comodule::trivial(Side::Left, 0);
        let page = ce_e2_comodule_second(&h, &k, &cofree, &f, 4, 10).unwrap();
        assert!(page.entries().all(|(_, t, ..)| t == 0));
        assert_eq!(page.subquotient_failure(), None);
        let sym = ce_e2_comodule_second(&h, &k, &f, &f, 4, 10).unwrap();
        assert_eq!(sym.factorized_agrees, Some(true));
        assert_eq!(sym.subquotient_failure(), None);
    }

    #[test]
    fn comodule_second_rejects_incoherent() {
        let h = QuotientHopf::e_n(1);
        let m = Comodule::trivial(Side::Left, 0).mark_incomplete();
        let f = Comodule::trivial(Side::Left, 0);
        assert!(ce_e2_comodule_second(&h, &QuotientHopf::a_n(0), &m, &f, 2, 4).is_err());
    }
}
