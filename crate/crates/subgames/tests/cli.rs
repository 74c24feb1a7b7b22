//! Black-box tests of the `subgames` binary: output shapes, exit codes,
//! config/env plumbing, and determinism of repeated runs.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subgames"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn subgames")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn seq_csv_prefix() {
    let out = run(&["seq", "--set", "1,2", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,value_exact,value_float");
    assert_eq!(lines[1], "0,0/1,0");
    assert_eq!(lines[2], "1,1/1,1");
    assert_eq!(lines[3], "2,1/2,0.5");
    assert_eq!(lines[4], "3,1/4,0.25");
    assert_eq!(lines[5], "4,5/8,0.625");
}

#[test]
fn seq_json_contains_schema_version() {
    let out = run(&["seq", "--set", "3,5", "--n", "8", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"][6]["value_exact"], "1/2");
    assert_eq!(v["rows"][8]["value_exact"], "0/1");
}

#[test]
fn seq_float_mode_omits_exact_column() {
    let out = run(&[
        "seq", "--set", "1,2", "--n", "20000", "--mode", "float64", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["rows"][20000]["value_exact"].is_null());
}

#[test]
fn analyze_flags_printed_formula_mismatch() {
    let out = run(&["analyze", "--set", "3,5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["kind"], "oscillates");
    assert_eq!(v["alpha1"]["via_quotient"], "-1/8");
    assert_eq!(v["alpha1"]["via_printed_formula"], "-3/8");
    assert_eq!(v["alpha1"]["printed_formula_agrees"], false);
    assert_eq!(v["alpha1"]["sums_quotient_agree"], true);
    assert_eq!(v["even_limit"], "3/8");
    assert_eq!(v["odd_limit"], "5/8");
}

#[test]
fn analyze_even_element_converges() {
    let out = run(&["analyze", "--set", "1,2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["kind"], "converges_to_half");
    assert!(v["alpha1"].is_null());
}

#[test]
fn analyze_reports_gcd_reduction() {
    let out = run(&["analyze", "--set", "4,6,10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reduction_factor"], 2);
    assert_eq!(v["reduced_set"], serde_json::json!([2, 3, 5]));
}

#[test]
fn scan_output_is_deterministic() {
    let a = run(&["scan", "--conjecture", "--t-max", "3", "--k-max", "11"]);
    let b = run(&["scan", "--conjecture", "--t-max", "3", "--k-max", "11"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["summary"], "conjecture");
    assert_eq!(v["failures"], 0);
}

#[test]
fn scan_question_summary_reports_negativity() {
    let out = run(&["scan", "--question", "--t-max", "3", "--k-max", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["summary"], "question");
    assert_eq!(v["zero_count"], 0);
    assert_eq!(v["all_negative"], true);
}

#[test]
fn multipile_value_json() {
    let out = run(&["multipile", "--sets", "1;1", "--pos", "2,1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"]["value_num"], "1");
    assert_eq!(v["value"]["value_den"], "1");
}

#[test]
fn dynamic_one_or_all() {
    let out = run(&["dynamic", "one-or-all", "--n", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "3/4");
}

#[test]
fn roots_subcommand() {
    // x^2 + 1: roots +-i.
    let out = run(&["roots", "--poly", "1 0 1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for r in roots {
        assert!((r["modulus"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bad_set_exits_2() {
    let out = run(&["seq", "--set", "0,3", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn bit_budget_exhaustion_exits_3() {
    let out = run(&[
        "seq", "--set", "3,5", "--n", "500", "--mode", "exact", "--bit-budget", "16",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn memo_budget_exhaustion_exits_3() {
    let out = run(&[
        "multipile", "--sets", "1;1", "--pos", "40,40", "--memo-budget", "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_overrides_defaults() {
    let dir = std::env::temp_dir().join("subgames-cli-test-config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("subgames.conf");
    std::fs::write(&cfg, "# defaults for this run\nformat=json\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "seq", "--set", "1,2", "--n", "2"]);
    assert!(out.status.success());
    // Without the config the seq default is CSV; JSON must parse here.
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"][2]["value_exact"], "1/2");

    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "no_such_key=1\n").unwrap();
    let out = run(&["--config", bad.to_str().unwrap(), "seq", "--set", "1,2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_env_resolves_relative_paths() {
    let dir = std::env::temp_dir().join("subgames-cli-test-outdir");
    std::fs::create_dir_all(&dir).unwrap();
    let out = bin()
        .args(["seq", "--set", "1,2", "--n", "2", "--out", "seq.csv"])
        .env("SUBGAMES_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.join("seq.csv")).unwrap();
    assert!(written.starts_with("n,value_exact,value_float\n"));
    assert!(Path::new(&dir.join("seq.csv")).exists());
}
