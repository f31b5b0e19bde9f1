//! Ext charts from minimal resolutions, Coext through dualization, the direct
//! cobar complex, and the doubling comparison.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::comodule::{double_module, dualize_comodule, Comodule, FDModule, Side};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::milnor::MilnorMonomial;
use crate::subquot::QuotientHopf;

use super::algebra::FDAlgebra;
use super::resolution::Resolution;

/// Dimensions of `Ext^{s,t}` for `0 <= s <= max_s`, `min_t <= t <= max_t`,
/// where `t` is the degree of a resolution generator minus the degree of its
/// image in the target module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtChart {
    pub max_s: usize,
    pub min_t: i32,
    pub max_t: i32,
    dims: BTreeMap<(usize, i32), usize>,
    pub note: String,
}

impl ExtChart {
    pub fn new(max_s: usize, min_t: i32, max_t: i32, note: &str) -> Self {
        ExtChart { max_s, min_t, max_t, dims: BTreeMap::new(), note: String::from(note) }
    }

    pub fn get(&self, s: usize, t: i32) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, s: usize, t: i32, dim: usize) {
        if dim == 0 {
            self.dims.remove(&(s, t));
        } else {
            self.dims.insert((s, t), dim);
        }
    }

    /// Nonzero entries ordered by `s`, then `t`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, usize)> + '_ {
        self.dims.iter().map(|(&(s, t), &d)| (s, t, d))
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// One `s t dim` line per nonzero entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, t, d) in self.entries() {
            out.push_str(&format!("{s} {t} {d}\n"));
        }
        out
    }
}

/// Basis of the cochains `Hom(F_s, Sigma^t N)`: `(generator, basis index of N)`.
pub(crate) fn cochain_basis(res: &Resolution<'_>, n: &FDModule, s: usize, t: i32) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, &gd) in res.gens(s).iter().enumerate() {
        for ni in n.basis_in_degree(gd - t) {
            out.push((g, ni));
        }
    }
    out
}

/// `delta: Hom(F_s) -> Hom(F_{s+1})` at internal degree `t`, rows indexed by
/// the cochain basis at `s + 1`.
pub(crate) fn coboundary(
    res: &Resolution<'_>,
    n: &FDModule,
    s: usize,
    t: i32,
    src: &[(usize, usize)],
    tgt: &[(usize, usize)],
) -> BitMatrix {
    let col: BTreeMap<(usize, usize), usize> = src.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut m = BitMatrix::zeros(tgt.len(), src.len());
    let mut bases = BTreeMap::new();
    for (row, &(g1, n1)) in tgt.iter().enumerate() {
        let gd = res.gens(s + 1)[g1];
        let basis = bases.entry(gd).or_insert_with(|| res.basis(s, gd));
        for i in res.image(s + 1, g1).iter_ones() {
            let (g, b) = basis.elems[i];
            let act = n.action(b);
            for ni in n.basis_in_degree(res.gens(s)[g] - t) {
                if act.get(n1, ni) {
                    let c = col[&(g, ni)];
                    m.set(row, c, !m.get(row, c));
                }
            }
        }
    }
    m
}

/// The cochain complex `Hom(F_s, Sigma^t N)` for one `t`: bases and
/// coboundaries for `s = 0..=max_s`.
pub struct HomComplex {
    pub bases: Vec<Vec<(usize, usize)>>,
    pub deltas: Vec<BitMatrix>,
}

pub fn hom_complex(res: &Resolution<'_>, n: &FDModule, max_s: usize, t: i32) -> HomComplex {
    let bases: Vec<Vec<(usize, usize)>> = (0..=max_s + 1).map(|s| cochain_basis(res, n, s, t)).collect();
    let deltas = (0..=max_s).map(|s| coboundary(res, n, s, t, &bases[s], &bases[s + 1])).collect();
    HomComplex { bases, deltas }
}

/// Ext chart from an existing resolution; `n` must already be adapted.
pub fn ext_from_resolution(res: &Resolution<'_>, n: &FDModule, max_s: usize, max_t: i32, note: &str) -> Result<ExtChart> {
    let n = res.algebra().adapt(n);
    let nmax = n.max_degree().unwrap_or(0);
    if max_s + 1 > res.max_s() || max_t + nmax > res.max_deg() {
        return Err(Error::Truncation { requested: (max_t + nmax).max(0) as u32, populated: res.max_deg().max(0) as u32 });
    }
    let min_t = res.min_deg() - nmax;
    let mut chart = ExtChart::new(max_s, min_t, max_t, note);
    for t in min_t..=max_t {
        let cx = hom_complex(res, &n, max_s, t);
        let mut prev_rank = 0;
        for s in 0..=max_s {
            let rank = cx.deltas[s].rank();
            chart.set(s, t, cx.bases[s].len() - rank - prev_rank);
            prev_rank = rank;
        }
    }
    Ok(chart)
}

/// `Ext^{s,t}_H(M, N)` for `s <= max_s` and `t <= max_t`.
pub fn ext(alg: &FDAlgebra, m: &FDModule, n: &FDModule, max_s: usize, max_t: i32) -> Result<ExtChart> {
    let n = alg.adapt(n);
    alg.check_module(&n)?;
    let top = max_t + n.max_degree().unwrap_or(0);
    let res = Resolution::new(alg, m, max_s + 1, top)?;
    ext_from_resolution(&res, &n, max_s, max_t, &format!("Ext over {}", alg.name()))
}

/// Basis of the module maps `M -> N` lowering degree by `t`, each as a
/// `dim N x dim M` matrix.
pub fn hom_space(alg: &FDAlgebra, m: &FDModule, n: &FDModule, t: i32) -> Vec<BitMatrix> {
    let m = alg.adapt(m);
    let n = alg.adapt(n);
    let unknowns: Vec<(usize, usize)> = (0..m.dim())
        .flat_map(|mi| n.basis_in_degree(m.degree(mi) - t).into_iter().map(move |ni| (ni, mi)))
        .collect();
    let col: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let gens = alg.generators();
    let mut rows: Vec<BitVec> = Vec::new();
    for &k in &gens {
        let (am, an) = (m.action(k), n.action(k));
        for mi in 0..m.dim() {
            // theta f(m) - f(theta m), coordinate n1
            let mut eq: BTreeMap<usize, BitVec> = BTreeMap::new();
            for ni in n.basis_in_degree(m.degree(mi) - t) {
                for n1 in an.column(ni).iter_ones() {
                    let row = eq.entry(n1).or_insert_with(|| BitVec::zeros(unknowns.len()));
                    row.flip(col[&(ni, mi)]);
                }
            }
            for m2 in am.column(mi).iter_ones() {
                for n1 in n.basis_in_degree(m.degree(m2) - t) {
                    let row = eq.entry(n1).or_insert_with(|| BitVec::zeros(unknowns.len()));
                    row.flip(col[&(n1, m2)]);
                }
            }
            rows.extend(eq.into_values().filter(|r| !r.is_zero()));
        }
    }
    let mat = BitMatrix::from_rows(unknowns.len(), rows);
    mat.kernel()
        .into_iter()
        .map(|v| {
            let mut f = BitMatrix::zeros(n.dim(), m.dim());
            for i in v.iter_ones() {
                let (ni, mi) = unknowns[i];
                f.set(ni, mi, true);
            }
            f
        })
        .collect()
}

/// `Coext^{s,t}_C(M, N) = Ext^{s,t}_{C*}(N*, M*)` for a finite quotient `C`.
pub fn coext(m: &Comodule, n: &Comodule, c: &QuotientHopf, max_s: usize, max_t: i32) -> Result<ExtChart> {
    let alg = FDAlgebra::from_quotient(c, "C*")?;
    let ms = dualize_comodule(m, c, m.max_degree())?;
    let ns = dualize_comodule(n, c, n.max_degree())?;
    let mut chart = ext(&alg, &ns, &ms, max_s, max_t)?;
    chart.note = String::from("Coext over C via duals");
    Ok(chart)
}

/// `Coext_C(F2, N)` for a left comodule `N` from the cobar complex
/// `C̄^{(x) s} (x) N`, without passing through modules.
pub fn cobar_coext(c: &QuotientHopf, n: &Comodule, max_s: usize, max_t: i32) -> Result<ExtChart> {
    if n.side() != Side::Left {
        return Err(Error::Precondition(String::from("cobar complex needs a left comodule")));
    }
    let cbar: Vec<MilnorMonomial> = c
        .finite_basis()
        .ok_or_else(|| Error::Precondition(String::from("coalgebra is not finite")))?
        .into_iter()
        .filter(|m| !m.is_unit())
        .collect();
    let cidx: BTreeMap<&MilnorMonomial, usize> = cbar.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n_elems: Vec<(u32, usize)> =
        (0..=n.max_degree()).flat_map(|d| (0..n.dim(d)).map(move |i| (d, i))).collect();
    // cells[s][t]: list of (tuple of cbar indices, N element)
    type Cell = (Vec<usize>, (u32, usize));
    let top = max_t.max(0);
    let mut cells: Vec<Vec<Vec<Cell>>> = Vec::new();
    let mut prev: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=max_s + 1 {
        let mut by_t: Vec<Vec<Cell>> = vec![Vec::new(); top as usize + 1];
        for tuple in &prev {
            let td: i32 = tuple.iter().map(|&i| cbar[i].degree() as i32).sum();
            for &(d, i) in &n_elems {
                let t = td + d as i32;
                if t <= top {
                    by_t[t as usize].push((tuple.clone(), (d, i)));
                }
            }
        }
        cells.push(by_t);
        let mut next = Vec::new();
        for tuple in &prev {
            let td: i32 = tuple.iter().map(|&i| cbar[i].degree() as i32).sum();
            for (k, a) in cbar.iter().enumerate() {
                if td + a.degree() as i32 <= top {
                    let mut t2 = tuple.clone();
                    t2.push(k);
                    next.push(t2);
                }
            }
        }
        prev = next;
    }
    let mut chart = ExtChart::new(max_s, 0, max_t, "Coext over C from the cobar complex");
    for t in 0..=top {
        let mut ranks = Vec::new();
        for s in 0..=max_s {
            let src = &cells[s][t as usize];
            let tgt = &cells[s + 1][t as usize];
            let pos: BTreeMap<&Cell, usize> = tgt.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut mat = BitMatrix::zeros(tgt.len(), src.len());
            for (j, (tuple, e)) in src.iter().enumerate() {
                let mut flip = |cell: Cell| {
                    let r = pos[&cell];
                    mat.set(r, j, !mat.get(r, j));
                };
                for (k, &ai) in tuple.iter().enumerate() {
                    for (x, y) in c.coproduct(&cbar[ai]).iter() {
                        if x.is_unit() || y.is_unit() {
                            continue;
                        }
                        let mut t2 = tuple[..k].to_vec();
                        t2.push(cidx[x]);
                        t2.push(cidx[y]);
                        t2.extend_from_slice(&tuple[k + 1..]);
                        flip((t2, *e));
                    }
                }
                for (a, e2) in n.coaction_terms(e.0, e.1) {
                    if a.is_unit() || !c.contains(&a) {
                        continue;
                    }
                    let mut t2 = tuple.clone();
                    t2.push(cidx[&a]);
                    flip((t2, e2));
                }
            }
            ranks.push(mat.rank());
        }
        for s in 0..=max_s {
            let below = if s == 0 { 0 } else { ranks[s - 1] };
            chart.set(s, t, cells[s][t as usize].len() - ranks[s] - below);
        }
    }
    Ok(chart)
}

/// Comparison of a chart with the chart of the `2^e`-fold doubled data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingReport {
    pub original: ExtChart,
    pub doubled: ExtChart,
    pub mismatch: Option<(usize, i32)>,
}

impl DoublingReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Checks `Ext^{s, 2^e t}` of the doubled algebra and modules against
/// `Ext^{s,t}` entry by entry, with every other doubled entry zero.
pub fn doubling_regrade_check(
    c: &QuotientHopf,
    m: &FDModule,
    n: &FDModule,
    e: u32,
    max_s: usize,
    max_t: i32,
) -> Result<DoublingReport> {
    let alg = FDAlgebra::from_quotient(c, "H")?;
    let dalg = FDAlgebra::from_quotient(&c.doubled(e), "H doubled")?;
    let original = ext(&alg, m, n, max_s, max_t)?;
    let f = 1i32 << e;
    let doubled = ext(&dalg, &double_module(&alg.adapt(m), e), &double_module(&alg.adapt(n), e), max_s, max_t * f)?;
    let mut mismatch = None;
    'outer: for s in 0..=max_s {
        for t in doubled.min_t.min(original.min_t * f)..=max_t * f {
            let want = if t % f == 0 { original.get(s, t / f) } else { 0 };
            if doubled.get(s, t) != want {
                mismatch = Some((s, t));
                break 'outer;
            }
        }
    }
    Ok(DoublingReport { original, doubled, mismatch })
}
