use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tr2dom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    serde_json::from_str(stdout(args, stdin).trim()).unwrap()
}

const P4: &str = "4 3\n0 1\n1 2\n2 3\n";

#[test]
fn solve_reports_value_and_witness() {
    let v = json(&["solve", "--method", "brute"], P4);
    assert_eq!(v["value"], 4);
    assert_eq!(v["witness"]["values"], serde_json::json!([0, 2, 1, 1]));
    assert_eq!(v["method"], "BruteForce");
    for key in ["nodes", "millis"] {
        assert!(v.get(key).is_some());
    }
}

#[test]
fn solve_reads_graph6_and_other_parameters() {
    let c6 = stdout(&["gen", "--family", "cycle:6"], "");
    assert_eq!(json(&["solve", "--param", "double"], &c6)["value"], 4);
    assert_eq!(json(&["solve", "--param", "dom"], &c6)["value"], 2);
    assert_eq!(json(&["solve", "--method", "bb"], &c6)["value"], 4);
}

#[test]
fn trace_dp_lists_every_state() {
    let v = json(&["solve", "--trace-dp", "0"], P4);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 7);
    assert_eq!(table[0]["state"], "(0,Zero)");
}

#[test]
fn verify_exit_status_follows_validity() {
    assert!(run(&["verify", "--labeling", "0 2 1 1"], P4).status.success());
    let bad = run(&["verify", "--labeling", "0 2 0 1"], P4);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"].as_array().unwrap().len(), 2);
}

#[test]
fn bounds_csv_columns() {
    let out = stdout(&["bounds"], P4);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("graph_id,bound,applicable,lhs,rhs,holds,tight"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn params_and_classify() {
    let v = json(&["params"], P4);
    assert_eq!((v["tr2"].as_u64(), v["dom"].as_u64(), v["total"].as_u64()), (Some(4), Some(2), Some(2)));
    let star = stdout(&["gen", "--family", "star:5"], "");
    let c = json(&["classify"], &star);
    assert_eq!(c["kind"], "ValueThree");
    assert_eq!(c["evidence"]["type"], "universal_vertex");
}

#[test]
fn reduce_emits_gadget_and_threshold() {
    let v = json(&["--format", "json", "reduce"], "1 1\n0 1 2\n");
    assert_eq!((v["k"].as_u64(), v["order"].as_u64()), (Some(20), Some(38)));
    let out = run(&["reduce", "--out", "edgelist", "--emit-k"], "1 0\n");
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "k=16");
    let graph = String::from_utf8(out.stdout).unwrap();
    assert!(graph.starts_with("30 27\n"));
    assert_eq!(json(&["solve", "--method", "treedp"], &graph)["value"], 18);
}

#[test]
fn gen_counts_and_formula() {
    assert_eq!(stdout(&["gen", "--trees", "5"], "").lines().count(), 125);
    assert_eq!(stdout(&["gen", "--connected", "4"], "").lines().count(), 38);
    assert_eq!(stdout(&["gen", "--family", "path:2..6"], "").lines().count(), 5);
    assert_eq!(json(&["formula", "--family", "path", "--n", "7"], "")["value"], 6);
    assert_eq!(json(&["formula", "--family", "cycle:9"], "")["value"], 6);
    assert_eq!(run(&["formula", "--family", "complete-bipartite:3,4"], "").status.code(), Some(2));
}

#[test]
fn sweep_exit_status_and_report() {
    let v = json(
        &["--format", "json", "--jobs", "1", "sweep", "--family", "path:2..14", "--family", "cycle:3..14", "--checks", "formulas"],
        "",
    );
    assert_eq!(v["checks"]["formulas"]["passed"], 25);
    assert_eq!(v["partial"], false);
    let csv = stdout(&["--format", "csv", "sweep", "--trees", "5", "--checks", "dp_oracle,tree_bounds"], "");
    assert_eq!(csv.lines().next(), Some("check,passed,failed,skipped,budget_exceeded"));
}

#[test]
fn replay_and_errors() {
    let v = json(&["replay", "--check", "bounds", "Ch"], "");
    assert_eq!(v["outcome"], "pass");
    assert_eq!(run(&["solve"], "not a graph\n").status.code(), Some(2));
    assert_eq!(run(&["solve"], "3 1\n0 1\n").status.code(), Some(2));
}
