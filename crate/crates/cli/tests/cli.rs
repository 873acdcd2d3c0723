use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_congestcut"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.txt"));
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn exact_on_dumbbell() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "db", &["dumbbell", "--size", "5"]);
    let v = json(&run(&["exact", g.to_str().unwrap()]));
    assert_eq!(v["weight"], 1);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(g.with_extension("json")).unwrap()).unwrap();
    assert_eq!(side["family"], "dumbbell");
    assert_eq!(side["expected_lambda"], 1);
}

#[test]
fn lb_verify_on_weighted_instance() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "h", &["h-weighted", "--n", "16", "--k", "4", "--x", "1,2", "--y", "2,3"]);
    let v = json(&run(&["lb-verify", g.to_str().unwrap(), "--k", "4"]));
    assert!(v["c_observed"].as_u64().unwrap() <= 2);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(g.with_extension("json")).unwrap()).unwrap();
    assert_eq!(side["expected_lambda"], 4);
    assert_eq!(side["expected_min_cut_members"], serde_json::json!([2, 6, 10, 14]));
}

#[test]
fn matula_on_cycle() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "c", &["cycle", "--n", "16"]);
    let v = json(&run(&["matula", g.to_str().unwrap(), "--epsilon", "0.5", "--seed", "7"]));
    assert_eq!(v["schema_version"], 1);
    let rec = &v["records"][0];
    assert_eq!(rec["cut_weight"], 2);
    assert_eq!(rec["ratio"], 1.0);
    assert_eq!(v["details"][0]["cut_weight"], 2);
}

#[test]
fn csv_columns_are_frozen() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "db", &["dumbbell", "--size", "4"]);
    let out = run(&["layering", g.to_str().unwrap(), "--seed", "1", "--trials", "2", "--out", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("seed,cut_weight,oracle_weight,ratio,measured_rounds,ledger_rounds"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn ledger_only_skips_the_oracle() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "c", &["cycle", "--n", "8", "--mult", "2"]);
    let v = json(&run(&["approx-conn", g.to_str().unwrap(), "--seed", "3", "--ledger-only"]));
    assert!(v["records"][0]["ledger_rounds"].as_u64().unwrap() > 0);
    assert!(v["details"][0]["ledger"]["entries"].is_array());
}

#[test]
fn experiments_report() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "c", &["cycle", "--n", "16", "--mult", "2"]);
    let path = g.to_str().unwrap();
    let v = json(&run(&["sample-exp", path, "--seed", "1", "--p", "1.0,0.01", "--trials", "20"]));
    assert_eq!(v["records"][0]["connected_rate"], 1.0);
    assert_eq!(v["records"].as_array().unwrap().len(), 2);
    let v = json(&run(&["diam-exp", path, "--seed", "1", "--p", "1.0", "--trials", "3"]));
    assert_eq!(v["records"][2]["diameter"], 8);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "c", &["cycle", "--n", "8"]);
    let path = g.to_str().unwrap();
    // Missing seed on a randomized command.
    assert_eq!(run(&["layering", path]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "h-base", "--n", "10", "--k", "4"]).status.code(), Some(2));
    let starved = run(&["approx-conn", path, "--seed", "1", "--budget-bits", "1"]);
    assert_eq!(starved.status.code(), Some(4), "{}", String::from_utf8_lossy(&starved.stderr));
    assert_eq!(run(&["exact", "/nonexistent/graph"]).status.code(), Some(1));
}

#[test]
fn weight_cap_is_enforced_on_load() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("heavy.txt");
    std::fs::write(&path, "2 1\n0 1 9\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["exact", p]).status.code(), Some(1));
    assert!(run(&["exact", p, "--weight-exponent", "4"]).status.success());
}

#[test]
fn suite_subset_passes() {
    let out = run(&["suite", "--only", "1,9"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
}
