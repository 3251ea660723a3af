//! The shipped problem files reproduce their committed certificates.

mod common;

use hopf_cert::pipeline::verify;
use hopf_cert::problem::load_problem;

fn golden(name: &str) {
    let mut cert = verify(&load_problem(common::problem(name)).unwrap()).unwrap();
    cert.strip_timing();
    let path = format!("{}/tests/golden/{name}.cert.json", env!("CARGO_MANIFEST_DIR"));
    let want = std::fs::read_to_string(&path).unwrap();
    assert!(cert.to_json() == want, "{name} differs from {path}:\n{}", cert.to_json());
}

#[test]
fn ex1_matches() {
    golden("ex1");
}

#[test]
fn ex2_matches() {
    golden("ex2");
}

#[test]
fn ex3_matches() {
    golden("ex3");
}

#[test]
fn ex3_bad_matches() {
    golden("ex3_bad");
}
