//! Minimal free resolutions over a finite algebra and chain maps between them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::comodule::FDModule;
use crate::error::{Error, Result};
use crate::f2::{kernel_of_images, BitMatrix, BitVec, PreimageSolver, Subspace};

use super::algebra::FDAlgebra;

/// Basis of a free module in one internal degree: `(generator, algebra index)`.
#[derive(Clone, Debug, Default)]
pub struct DegreeBasis {
    pub elems: Vec<(usize, usize)>,
    pos: BTreeMap<(usize, usize), usize>,
}

impl DegreeBasis {
    fn new(alg: &FDAlgebra, gens: &[i32], t: i32) -> Self {
        let mut elems = Vec::new();
        for (g, &gd) in gens.iter().enumerate() {
            for &b in alg.in_degree(t as i64 - gd as i64) {
                elems.push((g, b));
            }
        }
        let pos = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        DegreeBasis { elems, pos }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, g: usize, b: usize) -> Option<usize> {
        self.pos.get(&(g, b)).copied()
    }
}

/// A minimal free resolution `F_0 <- F_1 <- ...` of a finite module, computed
/// for homological degrees `0..=max_s` and internal degrees `<= max_deg`.
#[derive(Clone, Debug)]
pub struct Resolution<'a> {
    alg: &'a FDAlgebra,
    module: FDModule,
    max_s: usize,
    min_deg: i32,
    max_deg: i32,
    gens: Vec<Vec<i32>>,
    /// `images[s][g]`: `d(g)` in the basis of `F_{s-1}` at degree `|g|`;
    /// for `s = 0`, a vector over the whole basis of the module.
    images: Vec<Vec<BitVec>>,
}

impl<'a> Resolution<'a> {
    /// Resolves `module` with generators chosen lowest degree first and, within
    /// a degree, in the order the cycles are produced by elimination.
    pub fn new(alg: &'a FDAlgebra, module: &FDModule, max_s: usize, max_deg: i32) -> Result<Self> {
        let module = alg.adapt(module);
        alg.check_module(&module)?;
        let min_deg = module.min_degree().unwrap_or(0);
        let mut res = Resolution {
            alg,
            module,
            max_s,
            min_deg,
            max_deg,
            gens: Vec::new(),
            images: Vec::new(),
        };
        for s in 0..=max_s {
            res.gens.push(Vec::new());
            res.images.push(Vec::new());
            for t in min_deg..=max_deg {
                let cycles = res.cycles(s, t);
                let mut image = Subspace::new(res.target_len(s, t));
                for v in res.differential_images(s, t) {
                    image.add(&v);
                }
                for z in cycles {
                    if image.add(&z) {
                        res.gens[s].push(t);
                        res.images[s].push(z);
                    }
                }
            }
        }
        Ok(res)
    }

    pub fn algebra(&self) -> &FDAlgebra {
        self.alg
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    pub fn max_s(&self) -> usize {
        self.max_s
    }

    pub fn min_deg(&self) -> i32 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i32 {
        self.max_deg
    }

    /// Generator degrees of `F_s`.
    pub fn gens(&self, s: usize) -> &[i32] {
        &self.gens[s]
    }

    pub fn image(&self, s: usize, g: usize) -> &BitVec {
        &self.images[s][g]
    }

    pub fn basis(&self, s: usize, t: i32) -> DegreeBasis {
        DegreeBasis::new(self.alg, &self.gens[s], t)
    }

    /// Dimension of the target of `d_s` at degree `t`.
    fn target_len(&self, s: usize, t: i32) -> usize {
        if s == 0 {
            self.module.dim()
        } else {
            self.basis(s - 1, t).len()
        }
    }

    /// Left multiplication by basis element `b` on an element of `F_s` at
    /// degree `t`, landing in degree `t + |b|`.
    pub fn act(&self, s: usize, t: i32, x: &BitVec, b: usize) -> BitVec {
        let src = self.basis(s, t);
        let tgt = self.basis(s, t + self.alg.degree(b) as i32);
        self.act_in(&src, &tgt, x, b)
    }

    fn act_in(&self, src: &DegreeBasis, tgt: &DegreeBasis, x: &BitVec, b: usize) -> BitVec {
        let mut out = BitVec::zeros(tgt.len());
        for i in x.iter_ones() {
            let (g, c) = src.elems[i];
            for &k in self.alg.mul_basis(b, c) {
                if let Some(p) = tgt.position(g, k as usize) {
                    out.flip(p);
                }
            }
        }
        out
    }

    /// `d_s` on the basis of `F_s` at degree `t`.
    pub fn differential_images(&self, s: usize, t: i32) -> Vec<BitVec> {
        let src = self.basis(s, t);
        self.d_on(s, t, &src)
    }

    fn d_on(&self, s: usize, t: i32, src: &DegreeBasis) -> Vec<BitVec> {
        if s == 0 {
            return src
                .elems
                .iter()
                .map(|&(g, b)| self.module.action(b).mul_vec(&self.images[0][g]))
                .collect();
        }
        let tgt = self.basis(s - 1, t);
        let mut cache: BTreeMap<i32, DegreeBasis> = BTreeMap::new();
        src.elems
            .iter()
            .map(|&(g, b)| {
                let gd = self.gens[s][g];
                let from = cache.entry(gd).or_insert_with(|| self.basis(s - 1, gd));
                self.act_in(from, &tgt, &self.images[s][g], b)
            })
            .collect()
    }

    /// Cycles to be hit at stage `s`, degree `t`: the module in degree `t` for
    /// `s = 0`, otherwise the kernel of `d_{s-1}`.
    fn cycles(&self, s: usize, t: i32) -> Vec<BitVec> {
        if s == 0 {
            let n = self.module.dim();
            return self.module.basis_in_degree(t).into_iter().map(|i| BitVec::unit(n, i)).collect();
        }
        let imgs = self.differential_images(s - 1, t);
        kernel_of_images(&imgs, self.target_len(s - 1, t))
    }

    /// Preimage solver for `d_s` at degree `t`.
    pub fn solver(&self, s: usize, t: i32) -> PreimageSolver {
        PreimageSolver::new(&self.differential_images(s, t), self.target_len(s, t))
    }

    /// Checks `d d = 0`, minimality and exactness in every computed degree.
    pub fn verify(&self) -> Result<()> {
        for s in 0..=self.max_s {
            for t in self.min_deg..=self.max_deg {
                let src = self.basis(s, t);
                for (g, &gd) in self.gens[s].iter().enumerate() {
                    if gd == t && s > 0 {
                        let b = self.basis(s - 1, t);
                        if self.images[s][g].iter_ones().any(|i| self.alg.degree(b.elems[i].1) == 0) {
                            return Err(Error::Precondition(alloc::format!("d is not minimal at ({s}, {t})")));
                        }
                    }
                }
                let imgs = self.d_on(s, t, &src);
                if s > 0 {
                    let prev = self.differential_images(s - 1, t);
                    for v in &imgs {
                        let mut acc = BitVec::zeros(self.target_len(s - 1, t));
                        for i in v.iter_ones() {
                            acc.xor_assign(&prev[i]);
                        }
                        if !acc.is_zero() {
                            return Err(Error::Precondition(alloc::format!("d d != 0 at ({s}, {t})")));
                        }
                    }
                }
                let rank = PreimageSolver::new(&imgs, self.target_len(s, t)).rank();
                let want = if s == 0 {
                    self.module.basis_in_degree(t).len()
                } else {
                    kernel_of_images(&self.differential_images(s - 1, t), self.target_len(s - 1, t)).len()
                };
                if rank != want {
                    return Err(Error::LiftFailed { stage: s, degree: t });
                }
            }
        }
        Ok(())
    }
}

/// A chain map between two resolutions raising internal degree by `shift`,
/// lifting a module map. `images[s][g]` lies in the target `F_s` at `|g| + shift`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub shift: i32,
    pub images: Vec<Vec<BitVec>>,
}

/// Lifts the module map `f` (matrix `target.dim x source.dim`, raising degree
/// by `shift`) to a chain map `source_res -> target_res` through stage `max_s`,
/// for source generators of degree `<= source_res.max_deg()` whose image
/// degree stays within `target_res.max_deg()`.
pub fn lift_chain_map(
    source: &Resolution<'_>,
    target: &Resolution<'_>,
    f: &BitMatrix,
    shift: i32,
    max_s: usize,
) -> Result<ChainMap> {
    let max_s = max_s.min(source.max_s()).min(target.max_s());
    let mut images: Vec<Vec<BitVec>> = Vec::new();
    let mut solvers: BTreeMap<(usize, i32), PreimageSolver> = BTreeMap::new();
    for s in 0..=max_s {
        let mut stage = Vec::new();
        for (g, &gd) in source.gens(s).iter().enumerate() {
            let td = gd + shift;
            if td > target.max_deg() {
                stage.push(BitVec::zeros(0));
                continue;
            }
            // the element that d(phi(g)) must equal
            let want = if s == 0 {
                f.mul_vec(source.image(0, g))
            } else {
                let prev: &Vec<BitVec> = &images[s - 1];
                let src_basis = source.basis(s - 1, gd);
                let tgt_basis = target.basis(s - 1, td);
                let mut acc = BitVec::zeros(tgt_basis.len());
                for i in source.image(s, g).iter_ones() {
                    let (h, b) = src_basis.elems[i];
                    let hd = source.gens(s - 1)[h];
                    acc.xor_assign(&target.act(s - 1, hd + shift, &prev[h], b));
                }
                acc
            };
            let solver = solvers.entry((s, td)).or_insert_with(|| target.solver(s, td));
            let x = solver.solve(&want).ok_or(Error::LiftFailed { stage: s, degree: td })?;
            stage.push(x);
        }
        images.push(stage);
    }
    Ok(ChainMap { shift, images })
}

/// Generator counts per `(s, degree)`.
pub fn generator_table(res: &Resolution<'_>) -> BTreeMap<(usize, i32), usize> {
    let mut out = BTreeMap::new();
    for s in 0..=res.max_s() {
        for &d in res.gens(s) {
            *out.entry((s, d)).or_insert(0) += 1;
        }
    }
    out
}
