//! Black-box tests of the command-line binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nobler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn catalog_lists_four_kronecker_structures() {
    let out = run(&["catalog", "--p", "2", "--orders", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let structures = v["report"]["structures"].as_array().unwrap();
    assert_eq!(structures.len(), 4);
    let labels: Vec<&str> = structures.iter().map(|s| s["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["G0", "G1", "G2", "G3"]);
}

#[test]
fn green_table_compare_agrees_across_structures() {
    let out = run(&[
        "green-table",
        "--all-structures",
        "--compare",
        "--p",
        "2",
        "--orders",
        "2",
        "--bound",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["tables_identical"], serde_json::json!(true));
}

#[test]
fn pa_check_reports_counterexample_with_exit_one() {
    let out = run(&["pa-check", "--case", "n1n1n1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("NOT in noble correspondence"));
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["decompose"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "Vnonsense", "--p", "2", "--orders", "1,1"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["decompose", "V4@[1:1]+P+k", "--p", "2", "--orders", "1,1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["report"]["certified"], serde_json::json!(true));
    assert_eq!(v["report"]["summands"]["V4@[1:1]"], serde_json::json!(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
