//! Socles of windowed modules and one stage of an injective resolution by
//! shifted free modules.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::comodule::FDModule;
use crate::error::{Error, Result};
use crate::f2::{kernel_of_images, BitMatrix, BitVec, Subspace};
use crate::graded::{Degree, DegreeWindow};
use crate::milnor::{MilnorProductTable, Sq, SqElement};

use super::algebra::{poincare_check, FDAlgebra};
use super::ext::hom_space;

/// Result of a guarded socle scan of the Steenrod algebra under left
/// multiplication by a list of operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleReport {
    pub window: DegreeWindow,
    /// `dims[d]` for `0 <= d <= window.asserted_max()`.
    pub dims: Vec<usize>,
    /// Lowest-degree nonzero socle element, if any.
    pub witness: Option<(Degree, SqElement)>,
}

impl SocleReport {
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Dimensions of `{x in A^d : b x = 0 for every listed b}` for `d` up to the
/// asserted maximum of `window`.
pub fn socle_scan(gens: &[Sq], window: DegreeWindow) -> Result<SocleReport> {
    let table = MilnorProductTable::new(window.max_degree());
    socle_scan_with_table(&table, gens, window)
}

/// As [`socle_scan`], reusing a product table built to at least the window.
pub fn socle_scan_with_table(table: &MilnorProductTable, gens: &[Sq], window: DegreeWindow) -> Result<SocleReport> {
    if let Some(g) = gens.iter().find(|g| g.degree() == 0) {
        return Err(Error::Precondition(format!("operation {g} has degree 0")));
    }
    if let Some(top) = gens.iter().map(Sq::degree).max() {
        window.require_guard_exceeds(top)?;
    }
    if table.max_degree() < window.max_degree() {
        return Err(Error::Truncation { requested: window.max_degree(), populated: table.max_degree() });
    }
    let mut dims = Vec::new();
    let mut witness = None;
    for d in 0..=window.asserted_max() {
        let basis = Sq::basis(d);
        let mut images: Vec<BitVec> = (0..basis.len()).map(|_| BitVec::zeros(0)).collect();
        for g in gens {
            let target = Sq::basis(d + g.degree());
            for (j, x) in basis.iter().enumerate() {
                let prod = table.basis_product(g, x)?;
                let col = BitVec::from_indices(
                    target.len(),
                    prod.iter().map(|t| target.iter().position(|u| u == t).expect("product stays in degree")),
                );
                images[j] = images[j].concat(&col);
            }
        }
        let total = images.first().map_or(0, BitVec::len);
        let kernel = kernel_of_images(&images, total);
        if witness.is_none() {
            if let Some(v) = kernel.first() {
                let mut x = SqElement::zero();
                for i in v.iter_ones() {
                    x.toggle(basis[i].clone());
                }
                witness = Some((d, x));
            }
        }
        dims.push(kernel.len());
    }
    Ok(SocleReport { window, dims, witness })
}

/// Basis of the socle of a finite module: vectors killed by every
/// algebra generator, each homogeneous.
pub fn module_socle(alg: &FDAlgebra, m: &FDModule) -> Vec<BitVec> {
    let m = alg.adapt(m);
    let gens = alg.generators();
    let mut out = Vec::new();
    let mut degrees: Vec<i32> = m.degrees().to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let idx = m.basis_in_degree(d);
        let images: Vec<BitVec> = idx
            .iter()
            .map(|&i| {
                let mut col = BitVec::zeros(0);
                for &k in &gens {
                    col = col.concat(&m.action(k).column(i));
                }
                col
            })
            .collect();
        let total = gens.len() * m.dim();
        for v in kernel_of_images(&images, total) {
            out.push(BitVec::from_indices(m.dim(), v.iter_ones().map(|j| idx[j])));
        }
    }
    out
}

/// Quotient of `f` by a submodule spanned by homogeneous vectors closed under
/// the action. Basis: standard vectors of `f` outside the pivots.
pub fn quotient_module(f: &FDModule, sub: &[BitVec]) -> Result<FDModule> {
    let mut span = Subspace::new(f.dim());
    for v in sub {
        span.add(v);
    }
    let reps = span.complement_indices();
    let degrees = reps.iter().map(|&i| f.degree(i)).collect();
    let labels = reps.iter().map(|&i| f.labels()[i].clone()).collect();
    let mut action = Vec::new();
    for k in 0..f.ops().len() {
        let a = f.action(k);
        let mut q = BitMatrix::zeros(reps.len(), reps.len());
        for (c, &i) in reps.iter().enumerate() {
            let mut img = a.column(i);
            span.reduce(&mut img);
            for (r, &j) in reps.iter().enumerate() {
                if img.get(j) {
                    q.set(r, c, true);
                }
            }
        }
        action.push(q);
    }
    FDModule::new(degrees, labels, f.ops().to_vec(), action)
}

/// An embedding `M -> F` into a sum of shifted copies of the algebra.
#[derive(Clone, Debug)]
pub struct InjectiveStage {
    /// Degree of the generator of each free summand.
    pub generators: Vec<i32>,
    pub free: FDModule,
    /// `dim F x dim M`, degree preserving.
    pub map: BitMatrix,
    pub cokernel: FDModule,
}

/// Embeds `M` into free modules over a Poincaré duality algebra by choosing,
/// lowest socle degree first, maps to `Sigma^{d - pd} H` that are nonzero on
/// a socle vector not yet detected.
pub fn injective_embed_stage(alg: &FDAlgebra, m: &FDModule) -> Result<InjectiveStage> {
    let report = poincare_check(alg);
    if !report.perfect() {
        return Err(Error::Precondition(format!("{} fails Poincaré duality", alg.name())));
    }
    let pd = report.pd as i32;
    let m = alg.adapt(m);
    alg.check_module(&m)?;
    let socle = module_socle(alg, &m);
    let mut generators = Vec::new();
    let mut pieces: Vec<BitMatrix> = Vec::new();
    let apply = |pieces: &[BitMatrix], v: &BitVec| pieces.iter().fold(BitVec::zeros(0), |acc, f| acc.concat(&f.mul_vec(v)));
    let mut start = 0;
    while start < socle.len() {
        let d = m.degree(socle[start].first_one().expect("nonzero socle vector"));
        let mut end = start;
        while end < socle.len() && m.degree(socle[end].first_one().expect("nonzero socle vector")) == d {
            end += 1;
        }
        let layer = &socle[start..end];
        loop {
            let images: Vec<BitVec> = layer.iter().map(|v| apply(&pieces, v)).collect();
            let width = pieces.iter().map(BitMatrix::rows).sum();
            let Some(c) = kernel_of_images(&images, width).into_iter().next() else { break };
            let w = c.iter_ones().fold(BitVec::zeros(m.dim()), |mut acc, i| {
                acc.xor_assign(&layer[i]);
                acc
            });
            let g = d - pd;
            let f = hom_space(alg, &m, &alg.free_module(&[g]), 0)
                .into_iter()
                .find(|f| !f.mul_vec(&w).is_zero())
                .ok_or_else(|| Error::Precondition(format!("no map detects a socle class in degree {d}")))?;
            generators.push(g);
            pieces.push(f);
        }
        start = end;
    }
    let free = alg.free_module(&generators);
    let mut map = BitMatrix::zeros(free.dim(), m.dim());
    let mut offset = 0;
    for f in &pieces {
        for r in 0..f.rows() {
            for c in 0..f.cols() {
                if f.get(r, c) {
                    map.set(offset + r, c, true);
                }
            }
        }
        offset += f.rows();
    }
    let image: Vec<BitVec> = (0..m.dim()).map(|i| map.column(i)).collect();
    if map.rank() != m.dim() {
        return Err(Error::Precondition(String::from("stage map is not injective")));
    }
    let cokernel = quotient_module(&free, &image)?;
    Ok(InjectiveStage { generators, free, map, cokernel })
}
