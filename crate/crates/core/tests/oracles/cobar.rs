//! Cohomology of the normalized cobar complex of a truncated quotient
//! `F2[z1, z2]/(z1^na, z2^nb)` of `A_*`.
#![allow(dead_code)]

use std::collections::BTreeMap;

/// Monomial `z1^a z2^b` of the truncated dual `F2[z1, z2]/(z1^na, z2^nb)`.
pub type Mono = (u32, u32);

pub struct Truncated {
    pub na: u32,
    pub nb: u32,
}

impl Truncated {
    pub fn degree(m: Mono) -> i32 {
        (m.0 + 3 * m.1) as i32
    }

    pub fn reduced_basis(&self) -> Vec<Mono> {
        let mut v = Vec::new();
        for b in 0..self.nb {
            for a in 0..self.na {
                if (a, b) != (0, 0) {
                    v.push((a, b));
                }
            }
        }
        v
    }

    pub fn ok(&self, m: Mono) -> bool {
        m.0 < self.na && m.1 < self.nb
    }

    /// Reduced coproduct of `z1^a z2^b`, with `psi z2 = z2|1 + z1^2|z1 + 1|z2`.
    pub fn reduced_coproduct(&self, m: Mono) -> Vec<(Mono, Mono)> {
        let mut acc: BTreeMap<(Mono, Mono), bool> = BTreeMap::from([(((0, 0), (0, 0)), true)]);
        let z1 = [((1, 0), (0, 0)), ((0, 0), (1, 0))];
        let z2 = [((0, 1), (0, 0)), ((2, 0), (1, 0)), ((0, 0), (0, 1))];
        let factors = std::iter::repeat_n(&z1[..], m.0 as usize).chain(std::iter::repeat_n(&z2[..], m.1 as usize));
        for gen in factors {
            let mut next = BTreeMap::new();
            for (&(l, r), _) in acc.iter().filter(|(_, v)| **v) {
                for &(gl, gr) in gen {
                    let key = ((l.0 + gl.0, l.1 + gl.1), (r.0 + gr.0, r.1 + gr.1));
                    *next.entry(key).or_insert(false) ^= true;
                }
            }
            acc = next;
        }
        acc.into_iter()
            .filter(|&((l, r), v)| v && self.ok(l) && self.ok(r) && l != (0, 0) && r != (0, 0))
            .map(|(k, _)| k)
            .collect()
    }

    /// Basis of `Abar^{(x) s}` in total degree `t`.
    pub fn cochains(&self, s: usize, t: i32) -> Vec<Vec<Mono>> {
        let basis = self.reduced_basis();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(basis: &[Mono], s: usize, left: i32, cur: &mut Vec<Mono>, out: &mut Vec<Vec<Mono>>) {
            if cur.len() == s {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for &m in basis {
                let d = Truncated::degree(m);
                if d <= left {
                    cur.push(m);
                    go(basis, s, left - d, cur, out);
                    cur.pop();
                }
            }
        }
        go(&basis, s, t, &mut cur, &mut out);
        out
    }

    /// Rank of the cobar differential `C^s -> C^{s+1}` in degree `t`.
    pub fn differential_rank(&self, s: usize, t: i32) -> usize {
        let src = self.cochains(s, t);
        let tgt = self.cochains(s + 1, t);
        let index: BTreeMap<&Vec<Mono>, usize> = tgt.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let rows: Vec<Vec<bool>> = src
            .iter()
            .map(|word| {
                let mut row = vec![false; tgt.len()];
                for i in 0..word.len() {
                    for (l, r) in self.reduced_coproduct(word[i]) {
                        let mut w = word[..i].to_vec();
                        w.push(l);
                        w.push(r);
                        w.extend_from_slice(&word[i + 1..]);
                        row[index[&w]] ^= true;
                    }
                }
                row
            })
            .collect();
        rank(rows)
    }

    pub fn cohomology(&self, s: usize, t: i32) -> usize {
        let dim = self.cochains(s, t).len();
        let incoming = if s == 0 { 0 } else { self.differential_rank(s - 1, t) };
        dim - self.differential_rank(s, t) - incoming
    }
}

pub fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        r += 1;
    }
    r
}
