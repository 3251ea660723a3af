//! Covering fR by polygonal disks whose boundaries avoid every shadow fS_j.
//!
//! cargo run --release --example disk_cover

use hopf_cert::pipeline::R5Mode;
use hopf_cert::problem::load_problem;
use hopf_cert::regions::certify_r5p;

fn main() -> hopf_cert::Result<()> {
    let spec = load_problem(concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples/ex1.prob"))?;
    let R5Mode::Disks(disks) = &spec.r5 else { unreachable!("ex1 uses disks") };
    let r = certify_r5p(&spec.family, disks, spec.limits.depth_limit)?;
    println!("fR outside the disks: {:?} ({} boxes)", r.uncovered.verdict, r.uncovered.boxes_processed);
    for e in &r.edges {
        println!("  disk {} edge {}: j = 2..={} {:?}", e.disk, e.edge, e.j_checked, e.verdict);
    }
    println!("cover certified: {}", r.certified());
    Ok(())
}
