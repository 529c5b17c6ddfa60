//! End-to-end tests of the `homlab` binary: exit codes, JSON determinism,
//! and script execution.

use std::path::Path;
use std::process::{Command, Output};

fn homlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlab"))
        .args(args)
        .env_remove("HOMLAB_SEED")
        .output()
        .expect("failed to spawn homlab")
}

fn script_path(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scripts")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn nodal_script_reports_ext_vanishing() {
    let out = homlab(&["compute", &script_path("nodal.hl"), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cmds = report["commands"].as_array().unwrap();
    // ext 1 M M is zero, free_summand false
    assert_eq!(cmds[1]["result"]["is_zero"], serde_json::json!(true));
    assert_eq!(cmds[2]["result"]["length"], serde_json::json!(1));
    assert_eq!(cmds[3]["result"]["has_free_summand"], serde_json::json!(false));
    assert_eq!(cmds[3]["result"]["M_free"], serde_json::json!(false));
}

#[test]
fn fatpoint_script_cross_checks_oracle() {
    let out = homlab(&["compute", &script_path("fatpoint.hl"), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cmds = report["commands"].as_array().unwrap();
    assert_eq!(cmds[0]["result"]["oracle_agrees"], serde_json::json!(true));
    assert_eq!(cmds[1]["result"]["oracle_agrees"], serde_json::json!(true));
    assert_eq!(cmds[4]["result"]["type"], serde_json::json!(2));
}

#[test]
fn verify_rerun_is_byte_identical() {
    let args = [
        "verify", "--suite", "minsyz", "--samples", "30", "--seed", "42", "--json",
    ];
    let a = homlab(&args);
    let b = homlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "verdict summaries must be byte-identical");
}

#[test]
fn verify_jobs_do_not_change_output() {
    let base = homlab(&[
        "verify", "--suite", "dualfree", "--samples", "16", "--seed", "7", "--json",
    ]);
    let par = homlab(&[
        "verify", "--suite", "dualfree", "--samples", "16", "--seed", "7", "--jobs", "4",
        "--json",
    ]);
    assert_eq!(base.stdout, par.stdout);
}

#[test]
fn env_seed_is_honored() {
    let explicit = homlab(&[
        "verify", "--suite", "fittingM", "--samples", "8", "--seed", "99", "--json",
    ]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_homlab"))
        .args(["verify", "--suite", "fittingM", "--samples", "8", "--json"])
        .env("HOMLAB_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, via_env.stdout);
}

#[test]
fn usage_error_exits_one() {
    let out = homlab(&["verify", "--suite", "no_such_suite"]);
    assert_eq!(out.status.code(), Some(1));
    let out2 = homlab(&["compute", "/nonexistent/file.hl"]);
    assert_eq!(out2.status.code(), Some(1));
}

#[test]
fn syntax_error_names_position() {
    let dir = std::env::temp_dir().join("homlab_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.hl");
    std::fs::write(&bad, "ring R = F5[x:1];\nmodule M = coker R [[x)]];\n").unwrap();
    let out = homlab(&["compute", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{}", err);
}

#[test]
fn search_finds_no_counterexample() {
    let out = homlab(&[
        "search", "--statement", "tensorcm", "--seed", "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("no counterexample"), "{}", text);
}

#[test]
fn oracle_check_small_run_agrees() {
    let out = homlab(&["oracle-check", "--samples", "4", "--seed", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_equal"], serde_json::json!(true));
}
