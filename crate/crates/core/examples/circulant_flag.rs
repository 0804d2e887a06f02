//! Circulant ranks from roots at 1, the remainder map and the flag of
//! circulant subspaces, applied to the vectors attached to a tuple.
//!
//! Run with `cargo run --example circulant_flag`.

use ggs::circulant::{
    circ_dim, commutator_vectors, koenig_rados_rank, r_map, stab_rank_t, theta_b, theta_c, w_codim, LevelVector,
};
use ggs::fplinalg::FpMatrix;
use ggs::tuples::DefiningTuple;
use ggs::Result;

fn main() -> Result<()> {
    let d = LevelVector::new(5, [1, 2, 3, 0, 4])?;
    let by_roots = koenig_rados_rank(&d);
    let by_elimination = FpMatrix::circulant(d.as_vector()).rank();
    println!("d = {d}: rank {by_roots} from roots, {by_elimination} by elimination");
    let r: Vec<String> = r_map(&d).iter().map(|x| x.to_string()).collect();
    println!("  R(d) = ({}), circulant dimension {}", r.join(","), circ_dim(&d));

    let e = DefiningTuple::new(5, &[1, 0, 0, 1])?;
    println!("{e}");
    println!("  theta(b) = {} (circulant dim {})", theta_b(&e), circ_dim(&theta_b(&e)));
    println!("  theta(c) = {} (circulant dim {})", theta_c(&e), circ_dim(&theta_c(&e)));
    println!("  t = {}", stab_rank_t(&e)?);
    for (i, d) in commutator_vectors(&e).iter().enumerate() {
        println!("  d_{} = {d} (circulant dim {})", i + 1, circ_dim(d));
    }
    println!("  codimension of the span: {}", w_codim(&e));
    Ok(())
}
