use std::process::Command;

use hopf_cli::{run, Run};

fn hopf(args: &[&str]) -> Run {
    run(std::iter::once("hopf").chain(args.iter().copied()))
}

#[test]
fn coproduct_of_z2() {
    assert_eq!(hopf(&["coprod", "z2"]).stdout, "z2|1 + z1^2|z1 + 1|z2\n");
}

#[test]
fn ys_coaction_of_y3() {
    assert_eq!(hopf(&["ys", "--s", "2", "--element", "y3", "--coaction"]).stdout, "1|y3 + z1^4|y1^2 + z2^4|1\n");
}

#[test]
fn pd_check_of_a1() {
    let r = hopf(&["pd-check", "--n", "1"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "A(1): dim 8, pd 6, pairing perfect\n"));
}

#[test]
fn milnor_products() {
    assert_eq!(hopf(&["mul", "Sq(1)", "Sq(1)"]).stdout, "0\n");
    assert_eq!(hopf(&["mul", "Sq(1)", "Sq(2)"]).stdout, "Sq(3)\n");
    assert_eq!(hopf(&["mul", "--dual", "z1", "z1 + z2"]).stdout, "z1^2 + z1 z2\n");
}

#[test]
fn numeric_ranges_are_mandatory() {
    for args in [
        &["basis"][..],
        &["ext", "--algebra", "A(1)", "--source", "trivial", "--target", "trivial", "--max-s", "3"],
        &["profile-basis", "--profile", "P(2)"],
        &["pd-check"],
    ] {
        let r = hopf(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.contains("required"), "{}", r.stderr);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hopf(&["frobnicate"]).code, 2);
    assert_eq!(hopf(&["coprod", "x2"]).code, 2);
    assert_eq!(hopf(&["mul", "Sq(2", "Sq(1)"]).code, 2);
    assert_eq!(hopf(&["vanish", "--scenario", "H_BP", "--window", "20:0"]).code, 2);
    assert_eq!(hopf(&["vanish", "--scenario", "H_BP", "--window", "20:30"]).code, 2);
    assert_eq!(hopf(&["vanish", "--scenario", "NOPE", "--window", "20:10"]).code, 2);
    assert_eq!(hopf(&["vanish", "--scenario", "H_BP", "--window", "20-10"]).code, 2);
}

#[test]
fn vanish_exit_code_tracks_report() {
    let ok = hopf(&["vanish", "--scenario", "H_BP", "--window", "20:10"]);
    assert_eq!(ok.code, 0, "{}", ok.stdout);
    assert!(!ok.stdout.contains("FAIL"));
    let bad = hopf(&["vanish", "--scenario", "H_BP", "--window", "26:12"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.contains("FAIL"));
}

#[test]
fn non_normal_pair_is_a_check_failure() {
    let r = hopf(&["ce2", "--form", "algebras", "--big", "A(1)", "--small", "A(0)", "--max-n", "2", "--max-u", "6"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("not normal"), "{}", r.stderr);
}

#[test]
fn profile_basis_and_cotensor() {
    let r = hopf(&["profile-basis", "--profile", "P(2)", "--max-degree", "4"]);
    assert_eq!(r.stdout, "0: 1\n1: z1\n2: z1^2\n3: z2 z1^3\n4: z1 z2 z1^4\n");
    let r = hopf(&["cotensor", "--quotient", "E", "--max-degree", "8", "--expect-profile", "A^(1)"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.ends_with("agrees against A^(1)\n"));
}

#[test]
fn coext_of_cofree_source() {
    let r = hopf(&["coext", "--coalgebra", "A(0)", "--source", "regular", "--target", "trivial", "--max-s", "4", "--max-t", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().count(), 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hopf");
    let ok = Command::new(bin).args(["pd-check", "--n", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "A(0): dim 2, pd 1, pairing perfect\n");
    let usage = Command::new(bin).args(["basis"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let threads = Command::new(bin).env("HOPF_THREADS", "zero").args(["pd-check", "--n", "0"]).output().unwrap();
    assert_eq!(threads.status.code(), Some(2));
    let two = Command::new(bin).env("HOPF_THREADS", "2").args(["pd-check", "--n", "0"]).output().unwrap();
    assert_eq!(two.status.code(), Some(0));
}
