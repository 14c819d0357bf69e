use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ftconsensus::cli::fixture::{fixture_graph, fixture_sequence};
use ftconsensus::graph::generators::path;
use ftconsensus::graph::Graph;
use ftconsensus::ratlinalg::{MatrixSequence, RationalMatrix};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftconsensus"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(value).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn write_text(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn demo_passes() {
    let out = run(&["demo"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["verdict"]["status"], "Unknown");
    assert_eq!(v["trajectory"]["consensus_at"], 4);
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &path(6));
    let seq = dir.path().join("s.json");
    let out = run(&["construct", "--graph", &g, "--out", seq.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let loaded: MatrixSequence = serde_json::from_str(&fs::read_to_string(&seq).unwrap()).unwrap();
    assert_eq!(loaded.len(), 15);
    let out = run(&[
        "verify",
        "--graph",
        &g,
        "--seq",
        seq.to_str().unwrap(),
        "--goal",
        "average",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["product"][0][0], "1/6");
}

#[test]
fn weighted_construct() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &path(3));
    let w = write_text(dir.path(), "w.json", r#"{"x": ["1/6", "1/3", "1/2"]}"#);
    let seq = dir.path().join("s.json");
    let out = run(&[
        "construct",
        "--graph",
        &g,
        "--weights",
        &w,
        "--out",
        seq.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "verify",
        "--graph",
        &g,
        "--seq",
        seq.to_str().unwrap(),
        "--goal",
        "consensus",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        json(&out)["product"][2],
        serde_json::json!(["1/6", "1/3", "1/2"])
    );
}

#[test]
fn verify_failure_exits_one_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &fixture_graph());
    let mut ms = fixture_sequence().into_matrices();
    ms[1] = RationalMatrix::identity(4);
    let s = write(dir.path(), "s.json", &MatrixSequence::new(4, ms).unwrap());
    let out = run(&["verify", "--graph", &g, "--seq", &s, "--goal", "average"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["failures"][0]["check"], "product_average");
}

#[test]
fn simulate_modes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &fixture_graph());
    let s = write(dir.path(), "s.json", &fixture_sequence());
    let x = write_text(dir.path(), "x.json", r#"{"x": ["1", "0", "0", "0"]}"#);
    let out = run(&["simulate", "--graph", &g, "--seq", &s, "--init", &x]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(
        v["states"][4],
        serde_json::json!(["1/4", "1/4", "1/4", "1/4"])
    );
    let out = run(&[
        "simulate", "--graph", &g, "--seq", &s, "--init", &x, "--mode", "approx",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["states"][4][0], 0.25);
}

#[test]
fn analyze_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let dag = write_text(
        dir.path(),
        "dag.json",
        r#"{"n": 3, "arcs": [[1, 2], [2, 3]]}"#,
    );
    let v = json(&run(&["analyze", "--graph", &dag]));
    assert_eq!(v["status"], "Infeasible");
    assert_eq!(v["reasons"]["strongly_connected"], false);
    let tree = write_text(
        dir.path(),
        "t.json",
        r#"{"n": 3, "arcs": [[1, 2], [2, 3]], "undirected": true}"#,
    );
    assert_eq!(
        json(&run(&["analyze", "--graph", &tree]))["status"],
        "Feasible"
    );
    let big = write(dir.path(), "big.json", &Graph::empty(21));
    let out = run(&["analyze", "--graph", &big]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("raise the limit"));
    assert_eq!(
        code(&run(&[
            "analyze",
            "--graph",
            &big,
            "--cycle-node-limit",
            "21"
        ])),
        0
    );
}

#[test]
fn certificate_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &fixture_graph());
    let s = write(dir.path(), "s.json", &fixture_sequence());
    let x = write_text(dir.path(), "x.json", r#"{"x": ["1", "0", "0", "0"]}"#);
    let out = run(&["certificate", "--graph", &g, "--seq", &s, "--init", &x]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["cycle"].as_array().unwrap().len() % 2, 0);
    let ones = write_text(dir.path(), "ones.json", r#"{"x": ["1", "1", "1", "1"]}"#);
    let out = run(&["certificate", "--graph", &g, "--seq", &s, "--init", &ones]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "degenerate");
}

#[test]
fn evidence_is_seeded() {
    let args = [
        "evidence",
        "--cycle-length",
        "4",
        "--trials",
        "50",
        "--max-length",
        "6",
        "--seed",
        "3",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["rank_one_products"], 0);
    assert!(v["note"].as_str().unwrap().contains("not a proof"));
    let odd = run(&[
        "evidence",
        "--cycle-length",
        "5",
        "--trials",
        "1",
        "--max-length",
        "1",
        "--seed",
        "0",
    ]);
    assert_eq!(code(&odd), 2);
}

#[test]
fn usage_and_format_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["verify", "--graph", "x.json"])), 2);
    let bad = write_text(dir.path(), "bad.json", r#"{"n": 2, "arcs": [[1, 5]]}"#);
    let out = run(&["analyze", "--graph", &bad]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("arcs"), "{err}");
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&run(&["analyze", "--graph", missing.to_str().unwrap()])),
        2
    );
}

#[test]
fn construct_without_spanning_tree_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &fixture_graph());
    let out = run(&[
        "construct",
        "--graph",
        &g,
        "--out",
        dir.path().join("s.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("{1,3}"));
}
