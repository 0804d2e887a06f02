//! Indices of derived subgroups: closed formulas next to brute force in a
//! quotient deep enough to make them exact.
//!
//! Run with `cargo run --release --example derived_series`.

use ggs::formulas::derived_index_log;
use ggs::tuples::DefiningTuple;
use ggs::verify::CongruenceQuotient;
use ggs::Result;

fn main() -> Result<()> {
    for (p, e, depth) in [(3, vec![1, 2], 3), (3, vec![0, 1], 3), (5, vec![1, 2, 0, 4], 2)] {
        let e = DefiningTuple::new(p, &e)?;
        // G^(n) contains Stab(n + 1), so level n + 1 sees the full index.
        let q = CongruenceQuotient::new(&e, depth + 1)?;
        let series = q.derived(depth);
        println!("{e}");
        for n in 1..=depth {
            let brute = q.log_index(&series[n])?;
            println!("  log |G : G^({n})| = {brute}, formula {}", derived_index_log(&e, n as u32)?);
        }
        let ahead: Vec<String> = (depth as u32 + 1..=depth as u32 + 3)
            .map(|n| derived_index_log(&e, n).map(|x| x.to_string()))
            .collect::<Result<_>>()?;
        println!("  formula beyond: {}", ahead.join(", "));
    }
    Ok(())
}
