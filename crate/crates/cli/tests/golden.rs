use std::path::{Path, PathBuf};

use hopf_cli::{run, Run};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn scenario(name: &str) -> String {
    root().join("scenarios").join(name).display().to_string()
}

/// `(golden file, argv after the program name, exit code)`.
fn cases() -> Vec<(&'static str, Vec<String>, u8)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("coprod_z2.txt", s(&["coprod", "z2"]), 0),
        ("ys_s2_y3.txt", s(&["ys", "--s", "2", "--element", "y3", "--coaction"]), 0),
        ("pd_check_n1.txt", s(&["pd-check", "--n", "1"]), 0),
        ("mul_sq2_sq1.txt", s(&["mul", "Sq(2)", "Sq(1)"]), 0),
        ("chart_a0.txt", s(&["chart", "--algebra", "A(0)", "--source", "trivial", "--target", "trivial", "--max-s", "4", "--max-t", "4", "--format", "ascii"]), 0),
        ("chart_a0.svg", s(&["chart", "--algebra", "A(0)", "--source", "trivial", "--target", "trivial", "--max-s", "4", "--max-t", "4", "--format", "svg"]), 0),
        ("chart_a1.txt", s(&["chart", "--algebra", "A(1)", "--source", "trivial", "--target", "trivial", "--max-s", "4", "--max-t", "12", "--format", "ascii"]), 0),
        ("chart_a1.svg", s(&["chart", "--algebra", "A(1)", "--source", "trivial", "--target", "trivial", "--max-s", "4", "--max-t", "12", "--format", "svg"]), 0),
        ("chart_a1_regular.svg", s(&["chart", "--algebra", "A(1)", "--source", "trivial", "--target", "regular", "--max-s", "5", "--max-t", "30", "--format", "svg"]), 0),
        ("ext_a1.json", s(&["ext", "--algebra", "A(1)", "--source", "trivial", "--target", "trivial", "--max-s", "4", "--max-t", "12", "--json"]), 0),
        ("ce2_e1_a1.txt", s(&["ce2", "--form", "algebras", "--big", "A(1)", "--small", "E(1)", "--max-n", "4", "--max-u", "12"]), 0),
        ("vanish_yn_ynext.json", vec!["vanish".into(), "--config".into(), scenario("yn_ynext.json"), "--json".into()], 0),
        ("vanish_h_bp.txt", vec!["vanish".into(), "--config".into(), scenario("h_bp.json")], 1),
    ]
}

fn invoke(args: &[String]) -> Run {
    run(std::iter::once("hopf".to_string()).chain(args.iter().cloned()))
}

#[test]
fn outputs_match_golden_files_for_every_thread_count() {
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        for (name, args, code) in cases() {
            let r = pool.install(|| invoke(&args));
            assert_eq!(r.code, code, "{name} with {threads} threads: {}", r.stderr);
            assert_eq!(r.stdout, golden(name), "{name} with {threads} threads");
        }
    }
}

#[test]
fn chart_out_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a0.svg");
    let r = invoke(&[
        "chart", "--algebra", "A(0)", "--source", "trivial", "--target", "trivial", "--max-s", "4", "--max-t", "4",
        "--format", "svg", "--out", path.to_str().unwrap(),
    ]
    .map(String::from));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("chart_a0.svg"));
}

#[test]
fn chart_reads_ext_json() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/ext_a1.json");
    let r = invoke(&["chart", "--input", path.to_str().unwrap(), "--format", "ascii"].map(String::from));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, golden("chart_a1.txt"));
}
