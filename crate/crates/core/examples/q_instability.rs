//! Certifying that every member at a fixed parameter has the same number of
//! unstable roots, or exhibiting a member with an imaginary root.
//!
//! cargo run --example q_instability

use hopf_cert::algebra::{int, RationalInterval};
use hopf_cert::family::IntervalPoly;
use hopf_cert::problem::load_problem;
use hopf_cert::stability::{q_unstable_certify, QOutcome};

fn main() -> hopf_cert::Result<()> {
    let spec = load_problem(concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples/ex1.prob"))?;
    let fam = &spec.family;
    for (alpha, rep) in [(fam.alpha_minus(), &spec.rep_minus), (fam.alpha_plus(), &spec.rep_plus)] {
        match q_unstable_certify(&fam.instantiate(alpha)?, rep)? {
            QOutcome::Certified(c) => println!("alpha = {alpha}: q = {} via {} exclusion pieces", c.q, c.exclusion_evidence.len()),
            other => println!("alpha = {alpha}: {other:?}"),
        }
    }

    // l^2 + [-1, 1] l + 1 contains l^2 + 1
    let s = IntervalPoly::new(vec![RationalInterval::point(int(1)), RationalInterval::new(int(-1), int(1))?])?;
    let rep = hopf_cert::algebra::UniPoly::from_ints(&[1, -1, 1], hopf_cert::algebra::Var::Lambda);
    if let QOutcome::Refuted(w) = q_unstable_certify(&s, &rep)? {
        println!("member {} has the root {} i", w.member, w.omega);
    }
    Ok(())
}
