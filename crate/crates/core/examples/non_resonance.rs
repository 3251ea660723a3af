//! Branch and bound over the (alpha, beta) plane: emptiness of fR meets fS_j.
//!
//! cargo run --release --example non_resonance

use hopf_cert::problem::load_problem;
use hopf_cert::regions::{certify_r5pp, DEFAULT_DEPTH_LIMIT};

fn main() -> hopf_cert::Result<()> {
    for name in ["ex2", "ex1"] {
        let spec = load_problem(format!("{}/../../examples/{name}.prob", env!("CARGO_MANIFEST_DIR")))?;
        let r = certify_r5pp(&spec.family, None, DEFAULT_DEPTH_LIMIT)?;
        println!(
            "{name}: {:?}, beta in [{}, {}], j up to {}",
            r.verdict,
            r.beta_min.as_deref().unwrap_or("-"),
            r.beta_top.as_deref().unwrap_or("-"),
            r.j_max_used
        );
        for c in &r.checks {
            println!("  j = {:>2}: {:?} after {} boxes", c.j, c.report.verdict, c.report.boxes_processed);
        }
        if let Some((j, (a, b))) = r.witness() {
            println!("  witness: (alpha, beta) = ({a}, {b}) lies in fR and in fS_{j}");
        }
    }
    Ok(())
}
