//! The command-line contract: exit codes, artifacts and diagnostics.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use hopf_cert::pipeline::Verdict;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-cert")).args(args).output().expect("binary runs")
}

fn prob(name: &str) -> String {
    common::problem(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const STABLE: &str = r#"{
    "name": "stable",
    "degree": 2,
    "alpha_range": ["0", "1"],
    "coefficients": [{"lo": "1", "hi": "2"}, {"lo": "3", "hi": "4"}],
    "representatives": {"selector": {"coefficients": ["3/2", "7/2", "1"]}},
    "r5": {"mode": "non_resonance"},
    "nonlinearity": "none"
}"#;

#[test]
fn exit_code_is_a_function_of_the_verdict() {
    assert_eq!(Verdict::Certified.exit_code(), 0);
    assert_eq!(Verdict::Refuted.exit_code(), 2);
    assert_eq!(Verdict::Inconclusive.exit_code(), 3);
}

#[test]
fn check_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["check", &prob("ex3"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("overall: Certified"));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(cert["overall"], "certified");
    assert_eq!(cert["format"], "hopf-cert/1");

    let o = run(&["check", &prob("ex3_bad"), "--quiet"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stderr.is_empty());
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"overall\": \"inconclusive\""));
}

#[test]
fn stable_family_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "stable.prob", STABLE);
    let o = run(&["check", &p, "--quiet"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_one_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["check", "/nonexistent/x.prob"]);
    assert_eq!(o.status.code(), Some(1));

    let p = write(dir.path(), "syntax.prob", "{\n  \"name\": \"x\",\n  oops\n}");
    let o = run(&["check", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let bad = STABLE.replace("\"3/2\"", "\"3/2 + b\"").replace("\"degree\": 2", "\"degree\": 3");
    let p = write(dir.path(), "bad.prob", &bad);
    let o = run(&["check", &p]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("unknown identifier 'b'") && err.contains("expected 3 entries"), "{err}");

    let o = run(&["check", &prob("ex3"), "--jmax", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["frobnicate", &prob("ex3")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn regions_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("r.svg");
    let o = run(&["regions", &prob("ex2"), "--resolution", "40", "--svg", svg.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("alpha,beta,class\n"));
    assert_eq!(csv.lines().count(), 1 + 40 * 40);
    assert!(csv.contains("in_fR"));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
    let again = run(&["regions", &prob("ex2"), "--resolution", "40"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), csv);
}

#[test]
fn roots_csv() {
    let o = run(&["roots", &prob("ex1"), "--resolution", "50", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("alpha,re,im,branch_id\n"));
    assert_eq!(csv.lines().count(), 1 + 50 * 4);
}

#[test]
fn kharitonov_report() {
    let o = run(&["kharitonov", &prob("ex3"), "--alpha", "-1/10,0,9/100"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = v.as_array().unwrap();
    assert_eq!(v.len(), 3);
    assert_eq!(v[0]["corners"].as_array().unwrap().len(), 4);
    assert_eq!(v[0]["hurwitz"], false);
}

#[test]
fn winding_report() {
    let o = run(&["winding", &prob("ex1"), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["crossing"]["total_winding"], 1);
    assert_eq!(v["crossing"]["holds"], true);

    let o = run(&["winding", &prob("ex1"), "--rect", "1/2,3/4,3,4", "--quiet"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["windings"][0]["winding"], 0);
}
