//! The sign-change test on T = Q Re P(i w) + R Im P(i w).
//!
//! cargo run --example descartes

use hopf_cert::descartes::{check_r5ppp, family_t, DescartesOutcome};
use hopf_cert::pipeline::R5Mode;
use hopf_cert::problem::load_problem;

fn main() -> hopf_cert::Result<()> {
    let spec = load_problem(concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples/ex3.prob"))?;
    let R5Mode::Descartes { q, r } = &spec.r5 else { unreachable!("ex3 uses the sign-change test") };
    println!("T(w) = {}", family_t(&spec.family, q, r).render());
    match check_r5ppp(&spec.family, q, r) {
        DescartesOutcome::Certified(ev) => println!("certified, sign classes {:?}", ev.classes),
        DescartesOutcome::Inconclusive(why) => println!("inconclusive: {}", why.reason),
    }
    Ok(())
}
