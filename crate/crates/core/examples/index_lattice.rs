//! The lattice of subgroups near the top of a GGS-group, with predicted
//! indices on each edge and brute-force values from level-3 quotients.
//!
//! Run with `cargo run --release --example index_lattice`.

use ggs::tuples::DefiningTuple;
use ggs::verify::lattice_brute_force;
use ggs::Result;

fn main() -> Result<()> {
    let e = DefiningTuple::new(5, &[1, 2, 0, 4])?;
    let report = lattice_brute_force(&e)?;
    println!("{e}: t = {}, class bits {:?}", report.t, report.class_bits);
    for edge in &report.lattice_edges {
        let brute = edge.brute_force.map_or("-".to_string(), |b| b.to_string());
        println!(
            "  {:>16} -> {:<16} {:?}: predicted {}, computed {brute} ({:?})",
            edge.from, edge.to, edge.kind, edge.predicted, edge.verdict
        );
    }
    println!("all edges agree: {}", report.all_match());
    Ok(())
}
