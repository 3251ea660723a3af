//! Eigenvalue paths of a selector, axis crossings and resonances.
//!
//! cargo run --release --example root_paths > paths.csv

use hopf_cert::degree::{find_resonances, track_roots};
use hopf_cert::problem::load_problem;

fn main() -> hopf_cert::Result<()> {
    let spec = load_problem(concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples/ex1.prob"))?;
    let sel = spec.selector.as_ref().expect("ex1 has a selector");
    let path = track_roots(sel, 401)?;
    for e in &path.events {
        eprintln!("branch {} {:?} at alpha = {:.6}, beta = {:.6}", e.branch, e.kind, e.alpha, e.beta);
    }
    for r in find_resonances(&path, 6) {
        eprintln!("resonance {}:1 at alpha = {:.6}, beta = {:.6}", r.j, r.alpha, r.beta_small);
    }
    eprintln!("Vieta residual {:.2e}", path.vieta_residual());
    print!("{}", path.to_csv());
    Ok(())
}
