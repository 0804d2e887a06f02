//! The action of a GGS-group on a finite level of the tree, its level
//! stabilizers and their indices.
//!
//! Run with `cargo run --example congruence_quotient`.

use ggs::formulas::stabilizer_index_log;
use ggs::tuples::DefiningTuple;
use ggs::verify::CongruenceQuotient;
use ggs::Result;

fn main() -> Result<()> {
    for (p, e, level) in [(3, vec![1, 2], 4), (5, vec![1, 0, 0, 1], 3), (5, vec![0, 1, 2, 0], 3)] {
        let e = DefiningTuple::new(p, &e)?;
        let q = CongruenceQuotient::new(&e, level)?;
        println!(
            "{e}: level-{level} quotient of degree {} has order {}^{}",
            q.group().degree(),
            p,
            q.group().log_order(p)?
        );
        for k in 1..=level {
            let brute = q.log_index(&q.stabilizer(k)?)?;
            let formula = stabilizer_index_log(&e, k as u32)?;
            println!("  log |Q : Stab({k})| = {brute}, formula {formula}");
        }
    }
    Ok(())
}
