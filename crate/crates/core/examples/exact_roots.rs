//! Exact real root isolation and half-plane root counting.
//!
//! cargo run --example exact_roots

use hopf_cert::algebra::{cauchy_bound, isolate_real_roots, ratio, RationalInterval, UniPoly, Var};
use hopf_cert::stability::root_count;

fn main() -> hopf_cert::Result<()> {
    // (x^2 - 2)(x - 1/3)^2
    let p = &UniPoly::from_ints(&[-2, 0, 1], Var::Alpha)
        * &UniPoly::linear(ratio(-1, 3), ratio(1, 1), Var::Alpha).pow(2);
    let b = cauchy_bound(&p)?;
    let mut roots = isolate_real_roots(&p, &RationalInterval::new(-&b, b)?)?;
    println!("p = {p}");
    for r in &mut roots {
        r.refine(&ratio(1, 1_000_000));
        println!("  root in {}  (multiplicity {}, ~{:.6})", r.enclosure(), r.multiplicity(), r.approx());
    }

    // (l^2 + 1)(l - 2)(l + 3): one root each side, two on the axis
    let q = &(&UniPoly::from_ints(&[1, 0, 1], Var::Lambda) * &UniPoly::from_ints(&[-2, 1], Var::Lambda))
        * &UniPoly::from_ints(&[3, 1], Var::Lambda);
    println!("q = {q}\n  {:?}", root_count(&q)?);
    Ok(())
}
