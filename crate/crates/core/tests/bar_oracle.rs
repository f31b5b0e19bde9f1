//! Ext over A(0) and A(1) from the normalized cobar complex of the dual
//! coalgebra, compared with the minimal-resolution computation.

#[path = "oracles/cobar.rs"]
mod cobar;

use cobar::Truncated;
use hopf_core::homalg::{ext, FDAlgebra};
use hopf_core::subquot::QuotientHopf;

fn compare(name: &str, dual: Truncated, max_s: usize, max_t: i32) {
    let alg = FDAlgebra::from_quotient(&QuotientHopf::parse_preset(name).unwrap(), name).unwrap();
    let k = alg.trivial_module();
    let chart = ext(&alg, &k, &k, max_s, max_t).unwrap();
    for s in 0..=max_s {
        for t in 0..=max_t {
            assert_eq!(chart.get(s, t), dual.cohomology(s, t), "{name} at s={s} t={t}");
        }
    }
}

#[test]
fn cobar_over_a0_is_a_tower() {
    let a0 = Truncated { na: 2, nb: 1 };
    for s in 0..=4 {
        for t in 0..=6 {
            assert_eq!(a0.cohomology(s, t), usize::from(t == s as i32));
        }
    }
    compare("A(0)", a0, 4, 6);
}

#[test]
fn cobar_over_a1_matches_resolution() {
    let a1 = Truncated { na: 4, nb: 2 };
    assert_eq!(a1.cohomology(3, 7), 1);
    assert_eq!(a1.cohomology(4, 12), 1);
    compare("A(1)", a1, 4, 12);
}
