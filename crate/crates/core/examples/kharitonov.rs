//! Robust stability of an interval polynomial from its four corner polynomials.
//!
//! cargo run --example kharitonov

use hopf_cert::algebra::{int, RationalInterval};
use hopf_cert::family::IntervalPoly;
use hopf_cert::stability::{kharitonov_hurwitz, root_count};

fn iv(lo: i64, hi: i64) -> RationalInterval {
    RationalInterval::new(int(lo), int(hi)).unwrap()
}

fn main() -> hopf_cert::Result<()> {
    for s in [
        IntervalPoly::new(vec![iv(1, 2), iv(3, 5), iv(2, 4)])?,
        IntervalPoly::new(vec![iv(8, 12), iv(1, 2), iv(2, 4)])?,
    ] {
        let terms: Vec<String> = s.with_leading().iter().enumerate().map(|(k, c)| format!("{c} l^{k}")).collect();
        println!("{}", terms.join(" + "));
        for k in s.corners().kharitonov() {
            println!("  {k:<40} {:?}", root_count(&k)?);
        }
        println!("  every member Hurwitz: {}\n", kharitonov_hurwitz(&s));
    }
    Ok(())
}
