//! End-to-end coverage of the command-line surface: exit codes, document
//! round-trips, report determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperconv"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const ORBIT3: &str = r#"{"hypergroup": {"n": 3, "identity": 0, "involution": [0,1,2],
 "tensor": [[[1,0,0],[0,1,0],[0,0,1]],[[0,1,0],[0.5,0,0.5],[0,1,0]],[[0,0,1],[0,1,0],[1,0,0]]],
 "haar": [1,2,1]}}"#;

#[test]
fn gen_then_validate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit8.json");
    let out = run(&["gen", "--family", "orbit", "--size", "8", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let text = fs::read_to_string(&path).unwrap();
    let first: serde_json::Value = serde_json::from_str(&text).unwrap();
    // field-exact round trip through parse → serialize → parse
    let reserialized = serde_json::to_string(&first).unwrap();
    let second: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(first, second);
    assert_eq!(first["hypergroup"]["n"], 8);

    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("\"pass\": true"));
}

#[test]
fn validate_flags_axiom_failure_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // three points with a non-associative product row
    let bad = r#"{"hypergroup": {"n": 3, "identity": 0, "involution": [0,1,2],
      "tensor": [[[1,0,0],[0,1,0],[0,0,1]],
                 [[0,1,0],[1,0,0],[1,0,0]],
                 [[0,0,1],[1,0,0],[1,0,0]]]}}"#;
    let path = write(dir.path(), "bad.json", bad);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("\"pass\": false"));
}

#[test]
fn malformed_document_is_a_structural_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", "{\"hypergroup\": {\"n\": 2,}");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line"), "error should be line-anchored: {err}");

    // dimension mismatch is also structural, not an axiom report
    let mismatched = r#"{"hypergroup": {"n": 2, "identity": 0, "involution": [0,1],
      "tensor": [[[1,0],[0,1]]]}}"#;
    let path = write(dir.path(), "mismatched.json", mismatched);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn norm_weak_two_matches_breakpoint_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "inst.json", ORBIT3);
    let f = write(dir.path(), "f.json", r#"{"values": [5,3,4]}"#);
    let out = run(&[
        "norm",
        inst.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--p",
        "2",
        "--q",
        "inf",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "7.5");

    let out = run(&["norm", inst.to_str().unwrap(), "--f", f.to_str().unwrap(), "--p", "1"]);
    assert_eq!(stdout(&out).trim(), "15");
}

#[test]
fn convolve_matches_hand_computation() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = r#"{"hypergroup": {"n": 2, "identity": 0, "involution": [0,1],
      "tensor": [[[1,0],[0,1]],[[0,1],[1,0]]]}}"#;
    let inst = write(dir.path(), "z2.json", z2);
    let f = write(dir.path(), "f.json", r#"{"values": [1,2]}"#);
    let g = write(dir.path(), "g.json", r#"{"values": [3,4]}"#);
    let out = run(&[
        "convolve",
        inst.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--g",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["values"], serde_json::json!([11.0, 10.0]));
}

#[test]
fn rearrange_emits_all_three_layers() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "inst.json", ORBIT3);
    let f = write(dir.path(), "f.json", r#"{"values": [5,3,4]}"#);
    let out = run(&["rearrange", inst.to_str().unwrap(), "--f", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["distribution"]["breakpoints"], serde_json::json!([0.0, 3.0, 4.0, 5.0]));
    assert_eq!(doc["distribution"]["values"], serde_json::json!([4.0, 2.0, 1.0, 0.0]));
    assert_eq!(doc["rearrangement"]["breakpoints"], serde_json::json!([0.0, 1.0, 2.0, 4.0]));
    assert_eq!(doc["rearrangement"]["values"], serde_json::json!([5.0, 4.0, 3.0, 0.0]));
    assert_eq!(doc["maximal"]["total_mass"], serde_json::json!(15.0));
}

#[test]
fn potential_of_identity_density_returns_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let with_rho = r#"{"hypergroup": {"n": 3, "identity": 0, "involution": [0,1,2],
 "tensor": [[[1,0,0],[0,1,0],[0,0,1]],[[0,1,0],[0.5,0,0.5],[0,1,0]],[[0,0,1],[0,1,0],[1,0,0]]],
 "haar": [1,2,1]},
 "rho": [[0,1,2],[1,0,2],[2,2,0]]}"#;
    let inst = write(dir.path(), "inst.json", with_rho);
    let f = write(dir.path(), "unit.json", r#"{"values": [1,0,0]}"#);
    let out = run(&[
        "potential",
        inst.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--alpha",
        "1",
        "--exponent",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // I_α applied to the normalized identity density reproduces the kernel
    assert_eq!(doc["values"], serde_json::json!([0.0, 1.0, 0.5]));
}

#[test]
fn verify_is_deterministic_and_clean() {
    let dir = tempfile::tempdir().unwrap();
    let report_a = dir.path().join("a.json");
    let report_b = dir.path().join("b.json");
    let csv = dir.path().join("a.csv");
    let args = |report: &Path| {
        vec![
            "verify".to_string(),
            "--seed".into(),
            "42".into(),
            "--trials".into(),
            "60".into(),
            "--sizes".into(),
            "4,9".into(),
            "-o".into(),
            report.to_str().unwrap().into(),
        ]
    };
    let mut first = args(&report_a);
    first.push("--csv".into());
    first.push(csv.to_str().unwrap().into());
    let out = bin().args(&first).output().unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("\"violations\": 0"));

    let out = bin().args(args(&report_b)).output().unwrap();
    assert_eq!(code(&out), 0);

    let a = fs::read(&report_a).unwrap();
    let b = fs::read(&report_b).unwrap();
    assert_eq!(a, b, "same seed must produce byte-identical reports");

    let table = fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("trial_id,check_name,lhs,rhs,ratio,pass\n"));
    assert!(table.lines().count() > 60);
}

#[test]
fn verify_rejects_zero_trials() {
    let out = run(&["verify", "--trials", "0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_reads_suite_block_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"suite": {"seed": 11, "trials": 10, "sizes": [3, 4],
        "families": ["cyclic", "orbit"]}}"#;
    let path = write(dir.path(), "config.json", config);
    let out = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("\"trials\": 10"));

    // bare configurations work as well
    let bare = r#"{"seed": 3, "trials": 5, "sizes": [4]}"#;
    let path = write(dir.path(), "bare.json", bare);
    let out = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn haar_reads_growth_only_instances() {
    let dir = tempfile::tempdir().unwrap();
    let growth = r#"{"growth": {"radii": [1.0, 2.0, 4.0], "weights": [1.0, 1.0, 2.0],
        "A": 1.0, "N": 1.0}}"#;
    let path = write(dir.path(), "growth.json", growth);
    let out = run(&["haar", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[1.0,1.0,2.0]"));
}

#[test]
fn gen_growth_emits_valid_shell_space() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shells.json");
    let out = run(&[
        "gen", "--family", "growth", "--size", "32", "--exponent", "2",
        "-o", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["growth"]["radii"].as_array().unwrap().len(), 32);
    assert_eq!(doc["growth"]["N"], 2.0);
    // the emitted space revalidates against the ball-growth law
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn validate_rejects_inconsistent_cross_references() {
    let dir = tempfile::tempdir().unwrap();
    let inconsistent = r#"{"hypergroup": {"n": 2, "identity": 0, "involution": [0,1],
      "tensor": [[[1,0],[0,1]],[[0,1],[1,0]]]},
      "rho": [[0,1,2],[1,0,2],[2,2,0]]}"#;
    let path = write(dir.path(), "bad_rho.json", inconsistent);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    let bad_fn = r#"{"hypergroup": {"n": 2, "identity": 0, "involution": [0,1],
      "tensor": [[[1,0],[0,1]],[[0,1],[1,0]]]},
      "functions": {"f": [1, 2, 3]}}"#;
    let path = write(dir.path(), "bad_fn.json", bad_fn);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}
