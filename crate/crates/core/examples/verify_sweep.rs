//! Brute-force verification over every tuple for p = 3 and a seeded sample
//! for p = 5.
//!
//! Run with `cargo run --release --example verify_sweep`.

use ggs::verify::{sweep, Check, Verdict};
use ggs::Result;

fn main() -> Result<()> {
    let full = sweep(3, 3, &Check::ALL, None, 1)?;
    println!("p = 3, all checks: {}/{} tuples pass", full.passed, full.tuples);

    let sample = sweep(5, 3, &[Check::Derived, Check::Stabilizers, Check::LocalLaws], Some(12), 1)?;
    println!("p = 5, sample of {}: {}/{} pass", sample.tuples, sample.passed, sample.tuples);
    for report in &sample.reports {
        for r in report.records.iter().filter(|r| r.verdict == Verdict::Fail) {
            println!("  {:?}: {} predicted {} computed {}", report.e, r.statement, r.predicted, r.computed);
        }
    }
    Ok(())
}
