use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn greenhall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greenhall"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn whittaker_value_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"rank":2,"q":4,"places":[{"id":"x","degree":1,"eigenvalues":["2","3"]}]}"#,
    );
    let div = write(dir.path(), "d.json", r#"{"x":[0,1]}"#);
    let out = greenhall(&["whittaker", "--spec", &spec, "--divisors", &div]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "43/1");
    let out = greenhall(&["whittaker", "--spec", &spec, "--divisors", &div, "--top"]);
    assert_eq!(json(&out)["value"], "24/1");
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"rank":1,"q":2,"places":[{"id":"x","degree":1,"eigenvalues":["0"]}]}"#,
    );
    let six = write(dir.path(), "six.json", r#"{"rank":1,"q":6,"places":[]}"#);
    let div = write(dir.path(), "d.json", "{}");
    let out = greenhall(&["whittaker", "--spec", &zero, "--divisors", &div]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("eigenvalue must be nonzero"));
    let out = greenhall(&["whittaker", "--spec", &six, "--divisors", &div]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime power"));
    assert_eq!(greenhall(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(greenhall(&["kostka", "--lambda", "2,1"]).status.code(), Some(2));
    assert_eq!(greenhall(&["kostka", "--lambda", "1,2", "--mu", "3"]).status.code(), Some(2));
}

#[test]
fn hecke_check_reports_both_sides() {
    let out = greenhall(&["hecke-check", "--q", "2", "--mu", "1", "--nu", "1", "--eigenvalues", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lhs"], "25/1");
    assert_eq!(v["rhs"], "25/1");
    assert_eq!(v["equal"], true);
    let out = greenhall(&["hecke-check", "--q", "3", "--mu", "2,1", "--nu", "1", "--eigenvalues", "-1/2,3,5"]);
    assert_eq!(json(&out)["equal"], true);
}

#[test]
fn snf_commands() {
    let out = greenhall(&["snf-check", "--a", "0,5", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["comparison"]["closed"], serde_json::json!([3, 0]));
    assert_eq!(v["comparison"]["oracle_valuations"], serde_json::json!([0, 3]));
    let out = greenhall(&["snf-fuzz", "--count", "500", "--seed", "7", "--max-val", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failed"], 0);
}

#[test]
fn small_commands() {
    let v = json(&greenhall(&["kostka", "--lambda", "3", "--mu", "1,1,1"]));
    assert_eq!(v["polynomial"], serde_json::json!({"3": "1/1"}));
    let out = greenhall(&["chartable", "--n", "3", "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("χ^(2,1)"));
    let v = json(&greenhall(&["hall", "--lambda", "2,1", "--mu", "1", "--nu", "1,1"]));
    assert_eq!(v["report"]["polynomial"], serde_json::json!({"0": "1/1"}));
    let v = json(&greenhall(&["green", "--lambda", "1,1", "--x"]));
    assert_eq!(v["kind"], "X");
}

#[test]
fn suite_reruns_are_byte_identical() {
    let args = ["suite", "hecke-41", "--bound", "3", "--seed", "11"];
    let a = greenhall(&args);
    let b = greenhall(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["cases"][0].get("elapsed_ms").is_none());
}

#[test]
fn timings_are_opt_in() {
    let v = json(&greenhall(&["suite", "kostka-len2", "--bound", "4", "--timings"]));
    assert!(v["cases"][0]["elapsed_ms"].is_number());
    let out = greenhall(&["orthogonality-check", "--bound", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("orthogonality: 15/15 passed"));
}

#[test]
fn oversized_suite_is_rejected() {
    let out = greenhall(&["suite", "hall-consistency", "--bound", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}
