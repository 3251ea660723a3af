//! Grid picture of fR and its shadows fS_j.
//!
//! cargo run --release --example region_grid -- ex2 out.svg

use hopf_cert::pipeline::R5Mode;
use hopf_cert::problem::load_problem;
use hopf_cert::regions::{grid_sample, CellClass};

fn main() -> hopf_cert::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "ex1".into());
    let spec = load_problem(format!("{}/../../examples/{name}.prob", env!("CARGO_MANIFEST_DIR")))?;
    let grid = grid_sample(&spec.family, 160, None)?;
    println!(
        "{name}: {} fR cells in {} components, {} undecided",
        grid.count(CellClass::InFr),
        grid.fr_components(),
        grid.count(CellClass::Undecided)
    );
    if let Some(out) = args.next() {
        let disks = match &spec.r5 {
            R5Mode::Disks(d) => d.clone(),
            _ => Vec::new(),
        };
        std::fs::write(&out, grid.to_svg(&disks))?;
        println!("wrote {out}");
    }
    Ok(())
}
