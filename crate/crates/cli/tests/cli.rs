use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopf-galois"))
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn generate(args: &[&str]) -> Value {
    let out = run(&[&["generate"], args].concat());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn corpus_file(name: &str) -> String {
    corpus().join(name).display().to_string()
}

#[test]
fn check_twisted_passes() {
    let out = run(&["check", &corpus_file("twisted-z2-qminus1.json")]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("outcome: pass"));
}

#[test]
fn truncated_poly_needs_not_strong_expectation() {
    let file = corpus_file("truncated-m2.json");
    let out = run(&["check", &file, "--expect", "not-strong"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = run(&["check", &file]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL  strong-grading"));
}

#[test]
fn malformed_scalar_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus().join("twisted-z2-q1.json")).unwrap();
    let bad = text.replacen(r#""coeff": "1""#, r#""coeff": "zeta(0)""#, 1);
    assert_ne!(bad, text);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("coeff"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(code(&run(&["check", "/nonexistent/x.json"])), 2);
}

#[test]
fn beta_n_above_cap_is_a_cap_error() {
    let out = run(&["check", &corpus_file("twisted-z2-q1.json"), "--beta-n", "5"]);
    assert_eq!(code(&out), 3);
    let out = run(&["check", &corpus_file("twisted-z2-q1.json"), "--beta-n", "5", "--max-beta-n", "5"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn group_order_cap() {
    let out = run(&["check", &corpus_file("twisted-z4x4-omega.json"), "--max-group-order", "8"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn generated_shapes() {
    let d = generate(&["twisted-group-algebra", "--n", "2", "--rank", "2", "--omega", "0,1;-1,0", "--q", "-1"]);
    assert_eq!(d["basis"].as_array().unwrap().len(), 4);
    let d = generate(&["truncated-poly", "--m", "3"]);
    let labels: Vec<&str> = d["basis"].as_array().unwrap().iter().map(|b| b["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["1", "x", "x^2"]);
    let d = generate(&["b-symmetric", "--rank", "1", "--sigma", "1", "--max-degree", "3"]);
    let labels: Vec<&str> = d["basis"].as_array().unwrap().iter().map(|b| b["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["1", "x"]);
}

#[test]
fn generate_rejects_oversized_output() {
    let out = run(&["generate", "twisted-group-algebra", "--n", "4", "--rank", "5"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn generate_then_check_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], &str)] = &[
        (&["twisted-group-algebra", "--n", "3", "--rank", "1"], "pass"),
        (&["twisted-group-algebra", "--n", "2", "--rank", "2", "--sigma", "0,1;1,0"], "pass"),
        (&["twisted-group-algebra", "--n", "3", "--rank", "2", "--omega", "0,1;-1,0", "--q", "zeta(3)"], "pass"),
        (&["truncated-poly", "--m", "3"], "not-strong"),
        (&["group-algebra", "--torsion", "2,3"], "pass"),
        (&["b-symmetric", "--n", "2", "--rank", "2", "--sigma", "1,0;0,1", "--max-degree", "2"], "not-strong"),
        (&["b-symmetric", "--rank", "2", "--omega", "0,1;-1,0", "--q", "zeta(4)", "--max-degree", "2"], "pass"),
    ];
    for (i, (args, expect)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        let p = path.to_str().unwrap();
        let out = run(&[&["generate"], *args, &["-o", p]].concat());
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let out = run(&["check", p, "--expect", expect]);
        assert_eq!(code(&out), 0, "{args:?}:\n{}", stdout(&out));
    }
}

#[test]
fn suite_over_shipped_corpus_agrees() {
    let out = run(&["suite", corpus().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains(" 0 failed"));
}

#[test]
fn suite_flags_broken_descriptors() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(corpus()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    std::fs::write(dir.path().join("zz-broken.json"), "{\"group\": ").unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["suite", dir.path().to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("zz-broken.json"));
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let broken = rows.as_array().unwrap().iter().find(|r| r["file"] == "zz-broken.json").unwrap();
    assert!(broken["agree"].is_null() && broken["note"].is_string());
}

#[test]
fn suite_on_empty_directory_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["suite", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let read = |args: &[&str], name: &str| {
        let path = dir.path().join(name);
        let out = run(&[args, &["--report", path.to_str().unwrap()]].concat());
        assert!(code(&out) <= 1);
        std::fs::read(path).unwrap()
    };
    let file = corpus_file("twisted-z3x3-omega.json");
    assert_eq!(read(&["check", &file], "a.json"), read(&["check", &file], "b.json"));
    let dir_arg = corpus().display().to_string();
    assert_eq!(read(&["suite", &dir_arg], "c.json"), read(&["suite", &dir_arg], "d.json"));
}

#[test]
fn check_report_lists_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["check", &corpus_file("truncated-m2.json"), "--expect", "not-strong", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["structure", "hopf-axioms", "coinvariants", "strong-grading", "galois", "equivalence", "beta-n"]
    );
    let galois = &r["checks"][4]["detail"];
    assert_eq!(galois["rank"], 3);
    assert_eq!(galois["kernel_witness"], "1*[x ⊗ x]");
}
