use std::process::{Command, Output};

use serde_json::Value;

const N1: &str = r#"{"dim":1,"generators":[[1]]}"#;

fn monalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn binomial_determinant() {
    let o = monalg(&["det", "binom", "2", "4", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "8");
}

#[test]
fn subintegral_negative_with_witness() {
    let o = monalg(&["monoid", "subintegral", "--sub", r#"{"dim":1,"generators":[[2]]}"#, "--super", N1]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "No (witness z=1, gcd 2)");
}

#[test]
fn subintegral_positive() {
    let o = monalg(&["monoid", "subintegral", "--sub", r#"{"dim":1,"generators":[[2],[3]]}"#, "--super", N1]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Yes");
}

#[test]
fn malformed_json_reports_position() {
    let o = monalg(&["monoid", "info", "--monoid", r#"{"dim":2,"generators":[[1,0],"#]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn unknown_verb_is_rejected() {
    let o = monalg(&["monoid", "frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report_shape() {
    let o = monalg(&["--format", "json", "monoid", "info", "--monoid", r#"{"dim":2,"generators":[[1,0],[1,1],[1,2]]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("json report");
    for key in ["case", "status", "certificates", "bounds", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["status"], "pass");
    assert_eq!(v["bounds"]["degree"], 12);
}

#[test]
fn env_overrides_bounds() {
    let o = Command::new(env!("CARGO_BIN_EXE_monalg"))
        .args(["--format", "json", "det", "binom", "1", "2"])
        .env("MONALG_DEGREE", "7")
        .env("MONALG_P_MAX", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["degree"], 7);
    assert_eq!(v["bounds"]["p_max"], 2);
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--format",
        "json",
        "monoid",
        "closure",
        "--sub",
        r#"{"dim":2,"generators":[[2,0],[3,0],[0,1],[1,1]]}"#,
        "--super",
        r#"{"dim":2,"generators":[[1,0],[0,1]]}"#,
    ];
    let a = monalg(&args);
    let b = monalg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn ideal_decomposition() {
    let o = monalg(&["ideal", "decompose", "--ideal", r#"{"host":{"dim":2,"generators":[[1,0],[0,1]]},"generators":[[1,1]]}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 primes"));
}

#[test]
fn verify_single_suite() {
    let o = monalg(&["verify", "suite", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}
