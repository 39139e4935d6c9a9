//! End-to-end tests of the command-line interface: flags, exit codes, report
//! determinism, and the documented output shapes.

use std::process::{Command, Output};

fn heapcrys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heapcrys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn heap_dot_has_six_nodes() {
    let out = heapcrys(&["heap", "dot", "--type", "A4", "--word", "3,4,2,3,1,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("label=").count(), 6 + 7, "6 nodes and 7 coloured edges");
    assert!(text.starts_with("digraph heap"));
}

#[test]
fn heap_build_json() {
    let out = heapcrys(&["heap", "build", "--type", "A3", "--word", "2,3,1,2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["heap"]["runner"].as_array().unwrap().len(), 4);
    assert_eq!(v["witness"], serde_json::json!([0, 1, 0]));
}

#[test]
fn gravsort_verify_counts() {
    let out = heapcrys(&[
        "crystal",
        "verify-gravsort",
        "--type",
        "A3",
        "--J",
        "1,3",
        "--n",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"), "{text}");
    assert!(text.contains("demazure=20"), "{text}");
}

#[test]
fn word_and_j_are_mutually_exclusive() {
    let out = heapcrys(&[
        "crystal",
        "generate",
        "--type",
        "A3",
        "--word",
        "2,3,1,2",
        "--J",
        "1,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_word_is_a_usage_error() {
    let out = heapcrys(&["heap", "build", "--type", "A3", "--word", "9,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn toggles_check_identity() {
    let out = heapcrys(&[
        "toggles", "check", "--type", "D4", "--weight", "w1", "--n", "1", "--identity",
        "t4 t2 t4 t2 t4 = s2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("EQUAL"));
}

#[test]
fn module_build_dumps_arrows() {
    let out = heapcrys(&["module", "build", "--type", "D5", "--word", "5,3,2,4,1,3,2,5,3,4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension_vector"], serde_json::json!([1, 2, 3, 2, 2]));
}

#[test]
fn nonminuscule_module_build_fails() {
    let out = heapcrys(&["module", "build", "--type", "D4", "--word", "2,1,3,4,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grassmannian_verify_small() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = heapcrys(&[
        "grassmannian",
        "verify",
        "--type",
        "A3",
        "--word",
        "2,3,1,2",
        "--n",
        "2",
        "--seeds",
        "3",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["criteria"][0]["status"], "PASS");
}

#[test]
fn suite_small_reports_every_criterion_once_and_is_reproducible() {
    let run = || {
        let out = heapcrys(&["suite", "all", "--bound", "small", "--seed", "7"]);
        assert!(out.status.success());
        stdout(&out)
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "identical config and seed must give byte-identical reports");
    for id in heapcrys::suite::CRITERIA {
        assert_eq!(a.matches(id).count(), 2, "{id} appears in line and JSON exactly once");
    }
}

#[test]
fn suite_single_criterion() {
    let out = heapcrys(&[
        "suite",
        "all",
        "--bound",
        "small",
        "--only",
        "demazure-intersection-counterexample",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS demazure-intersection-counterexample"));
}
