//! Words in a and b, their sections, contraction to the nucleus and
//! truncation to a finite level.
//!
//! Run with `cargo run --example sections`.

use std::sync::Arc;

use ggs::treeauto::{TreeWord, Vertex};
use ggs::tuples::DefiningTuple;
use ggs::Result;

fn main() -> Result<()> {
    let e = Arc::new(DefiningTuple::new(3, &[1, 2])?);
    let w = TreeWord::parse(&e, "b a b^-1 a^2 b")?;
    println!("w = {w}, root action a^{}, b-exponent {}", w.root_action(), w.b_exponent());
    for x in 0..3 {
        println!("  w|_{x} = {}", w.section_at(x));
    }
    let v = Vertex::parse("12", 3)?;
    println!("  w|_{v} = {}, {v}^w = {}", w.section(&v), w.act_on(&v));
    println!("  contraction: {:?}", w.contract(w.default_depth_budget()));

    let c = TreeWord::c(&e);
    let psi: Vec<String> = c.psi()?.iter().map(|s| s.to_string()).collect();
    println!("c = [b,a] = {c}, psi(c) = ({})", psi.join(", "));
    println!("b^3 is the identity: {}", TreeWord::b(&e).pow(3).is_identity());
    println!("[c, c^a] is the identity: {}", c.commutator(&c.conjugate_by_a_power(1)).is_identity());
    println!("truncate(b, 2) = {}", TreeWord::b(&e).truncate(2));
    Ok(())
}
