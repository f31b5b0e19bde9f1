//! Dense bit-packed linear algebra over F2.
//!
//! Rows are stored as packed `u64` words; elimination always picks the
//! leftmost pivot column and, within a column, the lowest-index row, so every
//! basis produced here is reproducible for a fixed input order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

/// A fixed-length vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Concatenate `self` with `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// A linear subspace of F2^n kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    // (pivot column, row) sorted by pivot
    rows: Vec<(usize, BitVec)>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &mut BitVec) {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Add `v` to the span. Returns `false` if it was already contained.
    pub fn add(&mut self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        let Some(p) = w.first_one() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&w);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Indices of the standard basis vectors complementing this subspace
    /// (the non-pivot columns).
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut piv = vec![false; self.ambient];
        for (p, _) in &self.rows {
            piv[*p] = true;
        }
        (0..self.ambient).filter(|&i| !piv[i]).collect()
    }
}

/// Kernel of the linear map sending the `i`-th standard basis vector of the
/// source to `images[i]`. Returned vectors live in F2^{images.len()}.
pub fn kernel_of_images(images: &[BitVec], target_dim: usize) -> Vec<BitVec> {
    let n = images.len();
    let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, img) in images.iter().enumerate() {
        debug_assert_eq!(img.len(), target_dim);
        let mut v = img.clone();
        let mut tag = BitVec::unit(n, i);
        for (p, row, rtag) in &pivots {
            if v.get(*p) {
                v.xor_assign(row);
                tag.xor_assign(rtag);
            }
        }
        match v.first_one() {
            Some(p) => {
                let at = pivots.partition_point(|(q, _, _)| *q < p);
                pivots.insert(at, (p, v, tag));
            }
            None => kernel.push(tag),
        }
    }
    kernel
}

/// Precomputed elimination data for a linear map given by the images of the
/// source basis; answers preimage queries without re-reducing the matrix.
#[derive(Clone, Debug)]
pub struct PreimageSolver {
    source_dim: usize,
    // (pivot, reduced image, source combination producing it)
    pivots: Vec<(usize, BitVec, BitVec)>,
    kernel: Vec<BitVec>,
}

impl PreimageSolver {
    pub fn new(images: &[BitVec], target_dim: usize) -> Self {
        let n = images.len();
        let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
        let mut kernel = Vec::new();
        for (i, img) in images.iter().enumerate() {
            debug_assert_eq!(img.len(), target_dim);
            let mut v = img.clone();
            let mut tag = BitVec::unit(n, i);
            for (p, row, rtag) in &pivots {
                if v.get(*p) {
                    v.xor_assign(row);
                    tag.xor_assign(rtag);
                }
            }
            match v.first_one() {
                Some(p) => {
                    let at = pivots.partition_point(|(q, _, _)| *q < p);
                    pivots.insert(at, (p, v, tag));
                }
                None => kernel.push(tag),
            }
        }
        PreimageSolver { source_dim: n, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> &[BitVec] {
        &self.kernel
    }

    /// Some `x` with `f(x) = b`, if `b` is in the image.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        let mut v = b.clone();
        let mut x = BitVec::zeros(self.source_dim);
        for (p, row, tag) in &self.pivots {
            if v.get(*p) {
                v.xor_assign(row);
                x.xor_assign(tag);
            }
        }
        v.is_zero().then_some(x)
    }
}

/// Rank of the span of `vectors`.
pub fn rank_of(vectors: &[BitVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut s = Subspace::new(first.len());
    vectors.iter().filter(|v| s.add(v)).count()
}

/// A dense F2 matrix, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BitMatrix { rows: rows.len(), cols, data: rows }
    }

    /// Build from 0/1 entries; every row must have the same length.
    pub fn from_entries(cols: usize, entries: &[Vec<u8>]) -> Option<Self> {
        if entries.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self::from_rows(cols, entries.iter().map(|r| BitVec::from_bits(r)).collect()))
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn to_entries(&self) -> Vec<Vec<u8>> {
        self.data.iter().map(|r| r.to_bits()).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.data[r].dot(v)))
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let rows = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        BitMatrix { rows: self.rows, cols: other.cols, data: rows }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(r) = (next..self.rows).find(|&r| m[r].get(c)) else {
                continue;
            };
            m.swap(next, r);
            let prow = m[next].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != next && row.get(c) {
                    row.xor_assign(&prow);
                }
            }
            pivots.push(c);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        (BitMatrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVec::unit(self.cols, free);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.get(i, free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// A solution of `M x = b` if one exists.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows);
        let aug = BitMatrix::from_rows(
            self.cols + 1,
            self.data
                .iter()
                .enumerate()
                .map(|(i, row)| row.concat(&BitVec::from_bits(&[b.get(i) as u8])))
                .collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if r.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_rank(m: &BitMatrix) -> usize {
        // count distinct vectors in the column space of m^T (row space)
        let n = m.rows();
        let mut seen = alloc::collections::BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let mut acc = BitVec::zeros(m.cols());
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(m.row(i));
                }
            }
            seen.insert(acc);
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_nullity_5x3() {
        let m = BitMatrix::from_entries(
            3,
            &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0], vec![0, 0, 0], vec![1, 0, 1]],
        )
        .unwrap();
        assert_eq!(brute_rank(&m), 2);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len() + m.rank(), 3);
        for v in &k {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_and_kernel_of_images() {
        let m = BitMatrix::from_entries(3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = BitVec::from_bits(&[1, 0]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let imgs: Vec<_> = (0..3).map(|c| m.column(c)).collect();
        let k = kernel_of_images(&imgs, 2);
        assert_eq!(k, vec![BitVec::from_bits(&[1, 1, 1])]);
    }

    #[test]
    fn subspace_complement() {
        let mut s = Subspace::new(4);
        assert!(s.add(&BitVec::from_bits(&[0, 1, 1, 0])));
        assert!(!s.add(&BitVec::from_bits(&[0, 1, 1, 0])));
        assert!(s.add(&BitVec::from_bits(&[0, 0, 1, 1])));
        assert_eq!(s.complement_indices(), vec![0, 3]);
        assert!(s.contains(&BitVec::from_bits(&[0, 1, 0, 1])));
    }

    #[test]
    fn inconsistent_system() {
        let m = BitMatrix::from_entries(1, &[vec![0], vec![1]]).unwrap();
        assert!(m.solve(&BitVec::from_bits(&[1, 0])).is_none());
    }
}
