use proptest::prelude::*;

use hopf_core::comodule::FDModule;
use hopf_core::f2::BitMatrix;
use hopf_core::graded::DegreeWindow;
use hopf_core::homalg::{doubling_regrade_check, ext, socle_scan, FDAlgebra};
use hopf_core::milnor::{parse_dual_element, parse_sq, parse_sq_element, sq_mul, DualElement, MilnorMonomial, Sq, SqElement};
use hopf_core::spectral::{ce_e2_algebras, NormalSequence};
use hopf_core::subquot::{convolve, verify_freeness, Profile, QuotientHopf};

fn sq_strategy(max_len: usize, max_entry: u32) -> impl Strategy<Value = Sq> {
    prop::collection::vec(0..=max_entry, 0..=max_len).prop_map(Sq::new)
}

fn monomial_strategy() -> impl Strategy<Value = MilnorMonomial> {
    prop::collection::vec(0u32..6, 0..=3).prop_map(MilnorMonomial::new)
}

fn alg(name: &str) -> FDAlgebra {
    FDAlgebra::from_quotient(&QuotientHopf::parse_preset(name).unwrap(), name).unwrap()
}

/// The same module after reordering its basis and then replacing basis
/// vectors by sums within a degree.
fn relabel(m: &FDModule, perm: &[usize], moves: &[(usize, usize)]) -> FDModule {
    let n = m.dim();
    let degrees: Vec<i32> = perm.iter().map(|&p| m.degree(p)).collect();
    let labels: Vec<String> = perm.iter().map(|&p| m.labels()[p].clone()).collect();
    let mut p = BitMatrix::identity(n);
    let mut p_inv = BitMatrix::identity(n);
    for &(i, j) in moves {
        let (i, j) = (i % n, j % n);
        if i == j || degrees[i] != degrees[j] {
            continue;
        }
        let mut e = BitMatrix::identity(n);
        e.set(i, j, true);
        p = p.mul(&e);
        p_inv = e.mul(&p_inv);
    }
    let action = (0..m.ops().len())
        .map(|k| {
            let a = m.action(k);
            let mut permuted = BitMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    permuted.set(r, c, a.get(perm[r], perm[c]));
                }
            }
            p_inv.mul(&permuted).mul(&p)
        })
        .collect();
    FDModule::new(degrees, labels, m.ops().to_vec(), action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sq_round_trips_through_text(q in sq_strategy(4, 9)) {
        prop_assert_eq!(parse_sq(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn sq_element_round_trips_through_text(v in prop::collection::vec(sq_strategy(3, 5), 0..5)) {
        let x: SqElement = v.into_iter().fold(SqElement::zero(), |mut acc, q| { acc.toggle(q); acc });
        prop_assert_eq!(parse_sq_element(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn dual_element_round_trips_through_text(v in prop::collection::vec(monomial_strategy(), 0..5)) {
        let x: DualElement = v.into_iter().fold(DualElement::zero(), |mut acc, m| { acc.toggle(m); acc });
        prop_assert_eq!(parse_dual_element(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn milnor_product_is_associative(a in sq_strategy(3, 4), b in sq_strategy(3, 4), c in sq_strategy(3, 4)) {
        let (a, b, c) = (SqElement::from(a), SqElement::from(b), SqElement::from(c));
        let max = a.max_degree() + b.max_degree() + c.max_degree();
        let left = sq_mul(&sq_mul(&a, &b, max).unwrap(), &c, max).unwrap();
        let right = sq_mul(&a, &sq_mul(&b, &c, max).unwrap(), max).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn socle_shrinks_as_operations_are_added(mask in 1u8..16, extra in 0usize..4) {
        let pool = [Sq::new(vec![1]), Sq::new(vec![2]), Sq::new(vec![0, 1]), Sq::new(vec![4])];
        let small: Vec<Sq> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| pool[i].clone()).collect();
        let mut big = small.clone();
        big.push(pool[extra].clone());
        let window = DegreeWindow::new(14, 5).unwrap();
        let lo = socle_scan(&small, window).unwrap();
        let hi = socle_scan(&big, window).unwrap();
        for (d, (x, y)) in hi.dims.iter().zip(&lo.dims).enumerate() {
            prop_assert!(x <= y, "degree {}: {} > {}", d, x, y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn ext_ignores_basis_labels(
        perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
        moves in prop::collection::vec((0usize..8, 0usize..8), 0..12),
    ) {
        let a1 = alg("A(1)");
        let k = a1.trivial_module();
        let n = a1.regular_module();
        let relabeled = relabel(&n, &perm, &moves);
        prop_assert_eq!(ext(&a1, &k, &n, 3, 10).unwrap().entries().collect::<Vec<_>>(),
                        ext(&a1, &k, &relabeled, 3, 10).unwrap().entries().collect::<Vec<_>>());
    }

    #[test]
    fn doubling_regrades_ext(e in 0u32..3, which in 0usize..2) {
        let name = ["A(0)", "A(1)"][which];
        let c = QuotientHopf::parse_preset(name).unwrap();
        let k = alg(name).trivial_module();
        let report = doubling_regrade_check(&c, &k, &k, e, 3, 6).unwrap();
        prop_assert!(report.passed(), "{} e={} {:?}", name, e, report.mismatch);
    }

    #[test]
    fn freeness_is_a_convolution(kind in 0usize..3, n in 1usize..3, max in 4u32..14) {
        let (sub, amb) = match kind {
            0 => (Profile::a_power(1), Profile::full()),
            1 => (Profile::p(n), Profile::p(n + 1)),
            _ => (Profile::p_power(n, 1), Profile::p(n)),
        };
        let report = verify_freeness(&sub, &amb, max).unwrap();
        prop_assert!(report.passed(), "{} in {} at {:?}", sub, amb, report.first_mismatch);
        let len = report.ambient_dims.len();
        prop_assert_eq!(convolve(&report.sub_dims, &report.quotient_dims, len), report.ambient_dims.clone());
        for (d, gens) in report.generators.iter().enumerate() {
            prop_assert_eq!(gens.len(), report.quotient_dims[d]);
        }
    }

    #[test]
    fn e2_pages_are_first_quadrant_and_bound_the_abutment(pair in 0usize..3, max_n in 1usize..4, max_u in 2i32..10) {
        let (big, small) = [("A(1)", "E(1)"), ("E(1)", "A(0)"), ("A(1)", "A(1)")][pair];
        let seq = NormalSequence::from_quotients(&QuotientHopf::parse_preset(big).unwrap(), &QuotientHopf::parse_preset(small).unwrap()).unwrap();
        let k = seq.quotient.trivial_module();
        let m = seq.s.trivial_module();
        let page = ce_e2_algebras(&seq, &k, &m, max_n, max_u).unwrap();
        prop_assert!(page.first_quadrant());
        prop_assert!(page.zero_propagation_holds());
        prop_assert_eq!(page.subquotient_failure(), None);
    }
}
