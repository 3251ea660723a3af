//! Winding numbers of a selector around disks and the crossing identity.
//!
//! cargo run --example winding

use hopf_cert::algebra::rational::fmt_rational;
use hopf_cert::algebra::{int, ratio, RationalInterval, UniPoly, Var};
use hopf_cert::degree::{crossing_identity_check, winding_number, SelectorPath};
use hopf_cert::regions::PolygonDisk;

fn main() -> hopf_cert::Result<()> {
    // l^2 - 2 a l + a^2 + 1, roots a +- i
    let a = |c: &[i64]| UniPoly::from_ints(c, Var::Alpha);
    let sel = SelectorPath::free(
        vec![a(&[1, 0, 1]), a(&[0, -2]), a(&[1])],
        RationalInterval::new(ratio(-1, 2), ratio(1, 2))?,
    )?;
    for (b0, b1) in [(ratio(1, 2), ratio(3, 2)), (int(2), int(3))] {
        let d = PolygonDisk::rectangle(ratio(-1, 2), ratio(1, 2), b0, b1)?;
        let w = winding_number(&sel, &d)?;
        let (lo, hi) = (&d.vertices()[0], &d.vertices()[2]);
        println!(
            "[{}, {}] x [{}, {}]: winding {} ({} samples)",
            fmt_rational(&lo.0), fmt_rational(&hi.0), fmt_rational(&lo.1), fmt_rational(&hi.1), w.winding, w.samples
        );
    }
    let d = PolygonDisk::rectangle(ratio(-1, 2), ratio(1, 2), ratio(1, 2), ratio(3, 2))?;
    let c = crossing_identity_check(&sel, &[d])?;
    println!("t- = {}, t+ = {}, total winding {}, identity holds: {}", c.t_minus, c.t_plus, c.total_winding, c.holds);
    Ok(())
}
