//! End to end: load a problem file, verify it and print the certificate.
//!
//! cargo run --release --example certify -- examples/ex3.prob

use hopf_cert::pipeline::verify;
use hopf_cert::problem::load_problem;

fn main() -> hopf_cert::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples/ex3.prob").into());
    let mut cert = verify(&load_problem(&path)?)?;
    cert.strip_timing();
    print!("{}", cert.to_json());
    eprint!("{}", cert.summary());
    std::process::exit(cert.exit_code());
}
