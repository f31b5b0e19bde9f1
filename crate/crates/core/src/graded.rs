//! Graded F2 vector spaces, graded linear maps, and degree windows.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, Subspace};

pub type Degree = u32;

/// A finite truncation `[0, max_degree]` together with a guard band: results
/// about infinite objects are only asserted in `[0, max_degree - guard]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    max_degree: Degree,
    guard: Degree,
}

impl DegreeWindow {
    pub fn new(max_degree: Degree, guard: Degree) -> Result<Self> {
        if guard > max_degree {
            return Err(Error::InvalidGuard { guard, max: max_degree });
        }
        Ok(DegreeWindow { max_degree, guard })
    }

    /// A window with no guard band.
    pub fn full(max_degree: Degree) -> Self {
        DegreeWindow { max_degree, guard: 0 }
    }

    pub fn max_degree(&self) -> Degree {
        self.max_degree
    }

    pub fn guard(&self) -> Degree {
        self.guard
    }

    pub fn asserted_max(&self) -> Degree {
        self.max_degree - self.guard
    }

    /// Fails unless the guard strictly exceeds `operation_degree`.
    pub fn require_guard_exceeds(&self, operation_degree: Degree) -> Result<()> {
        if self.guard <= operation_degree {
            return Err(Error::GuardTooSmall { guard: self.guard, operation_degree });
        }
        Ok(())
    }
}

/// A graded vector space populated in degrees `0..=max`, with stable labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    labels: Vec<Vec<String>>,
}

impl GradedSpace {
    /// `labels[d]` lists the basis of degree `d`.
    pub fn new(labels: Vec<Vec<String>>) -> Self {
        GradedSpace { labels }
    }

    /// A space with generated labels `e{d}_{i}`.
    pub fn from_dims(dims: &[usize]) -> Self {
        GradedSpace {
            labels: dims
                .iter()
                .enumerate()
                .map(|(d, &n)| (0..n).map(|i| format!("e{d}_{i}")).collect())
                .collect(),
        }
    }

    pub fn zero(max: Degree) -> Self {
        GradedSpace { labels: alloc::vec![Vec::new(); max as usize + 1] }
    }

    /// Highest populated degree, or `None` for an empty window.
    pub fn max_degree(&self) -> Option<Degree> {
        self.labels.len().checked_sub(1).map(|m| m as Degree)
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.labels.get(d as usize).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, d: Degree) -> &[String] {
        self.labels.get(d as usize).map_or(&[], Vec::as_slice)
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.dim(0) == 1
    }

    /// Restrict to degrees `0..=max`.
    pub fn truncate(&self, max: Degree) -> Result<GradedSpace> {
        let populated = self.max_degree().unwrap_or(0);
        if self.labels.is_empty() || max > populated {
            return Err(Error::Truncation { requested: max, populated });
        }
        Ok(GradedSpace { labels: self.labels[..=max as usize].to_vec() })
    }
}

/// Degree-wise dual on `[0, max]`. Labels toggle a trailing `*`, so dualizing
/// twice returns the original labels.
pub fn dualize(v: &GradedSpace, max: Degree) -> Result<GradedSpace> {
    let t = v.truncate(max)?;
    Ok(GradedSpace {
        labels: t
            .labels
            .iter()
            .map(|ls| {
                ls.iter()
                    .map(|l| match l.strip_suffix('*') {
                        Some(base) => String::from(base),
                        None => format!("{l}*"),
                    })
                    .collect()
            })
            .collect(),
    })
}

/// A linear map raising degree by `shift`; `matrices[d]` has shape
/// `dim target(d + shift) x dim source(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: i32,
    matrices: Vec<BitMatrix>,
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: i32,
        matrices: Vec<BitMatrix>,
    ) -> Result<Self> {
        let n = source.labels.len();
        if matrices.len() != n {
            return Err(Error::ShapeMismatch {
                degree: matrices.len().min(n) as Degree,
                expected: (n, 0),
                found: (matrices.len(), 0),
            });
        }
        for (d, m) in matrices.iter().enumerate() {
            let td = d as i64 + shift as i64;
            let rows = if td < 0 { 0 } else { target.dim(td as Degree) };
            let cols = source.dim(d as Degree);
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::ShapeMismatch {
                    degree: d as Degree,
                    expected: (rows, cols),
                    found: (m.rows(), m.cols()),
                });
            }
        }
        Ok(GradedMap { source, target, shift, matrices })
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let matrices = space.dims().iter().map(|&n| BitMatrix::identity(n)).collect();
        GradedMap { source: space.clone(), target: space.clone(), shift: 0, matrices }
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace, shift: i32) -> Self {
        let matrices = (0..source.labels.len())
            .map(|d| {
                let td = d as i64 + shift as i64;
                let rows = if td < 0 { 0 } else { target.dim(td as Degree) };
                BitMatrix::zeros(rows, source.dim(d as Degree))
            })
            .collect();
        GradedMap { source: source.clone(), target: target.clone(), shift, matrices }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn matrix(&self, d: Degree) -> &BitMatrix {
        &self.matrices[d as usize]
    }

    pub fn matrices(&self) -> &[BitMatrix] {
        &self.matrices
    }

    pub fn rank(&self, d: Degree) -> usize {
        self.matrices.get(d as usize).map_or(0, BitMatrix::rank)
    }

    fn target_degree(&self, d: usize) -> Option<Degree> {
        let td = d as i64 + self.shift as i64;
        (td >= 0).then_some(td as Degree)
    }
}

/// Per-degree kernel; labels are the sums of source labels in each kernel vector.
pub fn kernel(f: &GradedMap) -> GradedSpace {
    let labels = f
        .matrices
        .iter()
        .enumerate()
        .map(|(d, m)| {
            let src = f.source.labels(d as Degree);
            m.kernel().iter().map(|v| join_labels(src, v)).collect()
        })
        .collect();
    GradedSpace { labels }
}

/// Per-degree cokernel, populated over the target degrees hit by the source
/// window. The basis is the set of target basis vectors not among the pivots
/// of the image.
pub fn cokernel(f: &GradedMap) -> GradedSpace {
    let Some(tmax) = f.target.max_degree() else {
        return GradedSpace::new(Vec::new());
    };
    let mut labels: Vec<Vec<String>> = Vec::new();
    for t in 0..=tmax {
        let n = f.target.dim(t);
        let mut image = Subspace::new(n);
        let sd = t as i64 - f.shift as i64;
        if sd >= 0 && (sd as usize) < f.matrices.len() && f.target_degree(sd as usize) == Some(t) {
            let m = &f.matrices[sd as usize];
            for c in 0..m.cols() {
                image.add(&m.column(c));
            }
        }
        let tl = f.target.labels(t);
        labels.push(image.complement_indices().into_iter().map(|i| tl[i].clone()).collect());
    }
    GradedSpace { labels }
}

fn join_labels(labels: &[String], v: &BitVec) -> String {
    let parts: Vec<&str> = v.iter_ones().map(|i| labels[i].as_str()).collect();
    parts.join(" + ")
}
