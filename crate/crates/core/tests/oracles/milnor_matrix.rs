//! Milnor basis products from Milnor matrices and `A_*` coproducts from the
//! generator formula, written without the library's product code.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Mono = Vec<u32>;

pub fn trim(mut v: Mono) -> Mono {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

pub fn toggle<T: Ord>(s: &mut BTreeSet<T>, x: T) {
    if !s.remove(&x) {
        s.insert(x);
    }
}

/// Every Milnor matrix `x` with row sums `sum_j 2^j x_ij = r_i` and column
/// sums `sum_i x_ij = s_j`, contributing `Sq(T)` when each diagonal
/// multinomial is odd.
pub fn matrix_product(r: &[u32], s: &[u32]) -> BTreeSet<Mono> {
    let rows = r.len();
    let cols = s.len();
    let mut out = BTreeSet::new();
    // x[i][j] for i in 1..=rows, j in 1..=cols; x[i][0] and x[0][j] are determined
    let mut x = vec![vec![0u32; cols + 1]; rows + 1];
    fn fill(i: usize, j: usize, r: &[u32], s: &[u32], x: &mut Vec<Vec<u32>>, out: &mut BTreeSet<Mono>) {
        let (rows, cols) = (r.len(), s.len());
        if i > rows {
            for jj in 1..=cols {
                let used: u32 = x[1..=rows].iter().map(|row| row[jj]).sum();
                if used > s[jj - 1] {
                    return;
                }
                x[0][jj] = s[jj - 1] - used;
            }
            let mut t = Vec::new();
            for n in 1..=rows + cols {
                let mut acc = 0u32;
                let mut total = 0u32;
                for (ii, row) in x.iter().enumerate().take(n.min(rows) + 1) {
                    let jj = n - ii;
                    if jj > cols {
                        continue;
                    }
                    let v = row[jj];
                    if acc & v != 0 {
                        return;
                    }
                    acc |= v;
                    total += v;
                }
                t.push(total);
            }
            toggle(out, trim(t));
            return;
        }
        if j > cols {
            let used: u32 = (1..=cols).map(|jj| x[i][jj] << jj).sum();
            if used > r[i - 1] {
                return;
            }
            x[i][0] = r[i - 1] - used;
            fill(i + 1, 1, r, s, x, out);
            return;
        }
        let used: u32 = (1..j).map(|jj| x[i][jj] << jj).sum();
        let mut v = 0;
        while used + (v << j) <= r[i - 1] {
            x[i][j] = v;
            fill(i, j + 1, r, s, x, out);
            v += 1;
        }
        x[i][j] = 0;
    }
    if rows == 0 {
        out.insert(trim(s.to_vec()));
        return out;
    }
    fill(1, 1, r, s, &mut x, &mut out);
    out
}

/// `psi(z_n) = sum_i z_{n-i}^{2^i} (x) z_i`, extended multiplicatively.
pub fn expanded_coproduct(m: &[u32]) -> BTreeSet<(Mono, Mono)> {
    let mut acc: BTreeSet<(Mono, Mono)> = BTreeSet::from([(Vec::new(), Vec::new())]);
    for (k, &e) in m.iter().enumerate() {
        let n = k + 1;
        let mut gen = BTreeSet::new();
        for i in 0..=n {
            let mut l = vec![0; n];
            if n - i > 0 {
                l[n - i - 1] = 1 << i;
            }
            let mut r = vec![0; n];
            if i > 0 {
                r[i - 1] = 1;
            }
            toggle(&mut gen, (trim(l), trim(r)));
        }
        for _ in 0..e {
            let mut next = BTreeSet::new();
            for (a, b) in &acc {
                for (c, d) in &gen {
                    toggle(&mut next, (mono_mul(a, c), mono_mul(b, d)));
                }
            }
            acc = next;
        }
    }
    acc
}
