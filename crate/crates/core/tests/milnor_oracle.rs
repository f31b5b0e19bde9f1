//! Independent oracles for the Milnor basis: products by Milnor matrices and
//! coproducts by expanding the generator formula multiplicatively.

use std::collections::BTreeSet;

#[path = "oracles/milnor_matrix.rs"]
mod oracle;

use oracle::{expanded_coproduct, matrix_product, toggle, trim, Mono};

use hopf_core::milnor::{antipode, coproduct, sq_basis_product, MilnorMonomial, Sq, SqElement};

fn element_set(e: &SqElement) -> BTreeSet<Mono> {
    e.iter().map(|q| trim(q.entries().to_vec())).collect()
}

#[test]
fn matrix_oracle_agrees_through_total_degree_16() {
    let mut pairs = 0;
    for total in 0..=16 {
        for d in 0..=total {
            for a in Sq::basis(d) {
                for b in Sq::basis(total - d) {
                    let want = matrix_product(a.entries(), b.entries());
                    let got = element_set(&sq_basis_product(&a, &b));
                    assert_eq!(got, want, "{a} * {b}");
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn small_products() {
    let p = |r: &[u32], s: &[u32]| matrix_product(r, s);
    assert!(p(&[1], &[1]).is_empty());
    assert_eq!(p(&[2], &[1]), BTreeSet::from([vec![3], vec![0, 1]]));
    assert_eq!(p(&[1], &[2]), BTreeSet::from([vec![3]]));
}

fn core_coproduct(m: &MilnorMonomial) -> BTreeSet<(Mono, Mono)> {
    coproduct(m).iter().map(|(a, b)| (trim(a.exponents().to_vec()), trim(b.exponents().to_vec()))).collect()
}

#[test]
fn hopf_axioms_through_degree_24() {
    let start = std::time::Instant::now();
    for d in 0..=24 {
        for m in MilnorMonomial::basis(d) {
            let psi = core_coproduct(&m);
            assert_eq!(psi, expanded_coproduct(m.exponents()), "coproduct of {m}");

            // coassociativity
            let mut left = BTreeSet::new();
            let mut right = BTreeSet::new();
            for (a, b) in coproduct(&m).iter() {
                for (a1, a2) in coproduct(a).iter() {
                    toggle(&mut left, (a1.clone(), a2.clone(), b.clone()));
                }
                for (b1, b2) in coproduct(b).iter() {
                    toggle(&mut right, (a.clone(), b1.clone(), b2.clone()));
                }
            }
            assert_eq!(left, right, "coassociativity at {m}");

            // counit on both sides
            let lc: BTreeSet<_> = coproduct(&m).iter().filter(|(a, _)| a.is_unit()).map(|(_, b)| b.clone()).collect();
            let rc: BTreeSet<_> = coproduct(&m).iter().filter(|(_, b)| b.is_unit()).map(|(a, _)| a.clone()).collect();
            assert_eq!(lc, BTreeSet::from([m.clone()]));
            assert_eq!(rc, BTreeSet::from([m.clone()]));

            // sum chi(a') a'' = eps(m) = sum a' chi(a'')
            let mut l = BTreeSet::new();
            let mut r = BTreeSet::new();
            for (a, b) in coproduct(&m).iter() {
                for x in antipode(a).iter() {
                    toggle(&mut l, x.mul(b));
                }
                for y in antipode(b).iter() {
                    toggle(&mut r, a.mul(y));
                }
            }
            let eps = if m.is_unit() { BTreeSet::from([MilnorMonomial::unit()]) } else { BTreeSet::new() };
            assert_eq!(l, eps, "antipode left at {m}");
            assert_eq!(r, eps, "antipode right at {m}");
        }
    }
    assert!(start.elapsed().as_secs() < 30);
}
