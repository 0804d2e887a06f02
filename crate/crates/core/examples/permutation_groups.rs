//! The permutation group engine on its own: orders, membership, normal
//! closures and derived series.
//!
//! Run with `cargo run --example permutation_groups`.

use ggs::permgrp::{derived_series, lower_central, normal_closure, Permutation, PermutationGroup};
use ggs::Result;

fn main() -> Result<()> {
    let s4 = PermutationGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]])?,
            Permutation::from_cycles(4, &[&[0, 1]])?,
        ],
    )?;
    println!("S4 has order {}", s4.order());
    let orders: Vec<String> = derived_series(&s4, 4).iter().map(|g| g.order().to_string()).collect();
    println!("  derived series orders: {}", orders.join(" > "));
    let v4 = normal_closure(&s4, &[Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?])?;
    println!("  normal closure of (0 1)(2 3) has order {}", v4.order());

    // C_3 wr C_3 on the 9 leaves of the ternary tree of depth 2.
    let rotate = Permutation::from_images(vec![3, 4, 5, 6, 7, 8, 0, 1, 2])?;
    let inner = Permutation::from_cycles(9, &[&[0, 1, 2]])?;
    let w = PermutationGroup::on_tree(3, 2, vec![rotate, inner])?;
    println!("C3 wr C3: log_3 order {}, tree chain {}", w.log_order(3)?, w.uses_tree_chain());
    println!("  log_3 |gamma_3| = {}", lower_central(&w, 3)?.log_order(3)?);
    Ok(())
}
