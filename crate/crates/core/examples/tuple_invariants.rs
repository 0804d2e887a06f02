//! Difference tuples, symmetry classes and isomorphism normal forms.
//!
//! Run with `cargo run --example tuple_invariants`.

use ggs::tuples::{are_isomorphic, classify, first_difference, normal_forms, second_difference, DefiningTuple};
use ggs::Result;

fn main() -> Result<()> {
    for (p, e) in [(3, vec![1, 2]), (5, vec![1, 0, 0, 1]), (5, vec![0, 1, 2, 0]), (7, vec![1, 2, 3, 4, 5, 6])] {
        let e = DefiningTuple::new(p, &e)?;
        let class = classify(&e);
        println!("{e}");
        println!("  e'  = {}", first_difference(&e));
        println!("  e'' = {}", second_difference(&e));
        println!(
            "  sym(e) = {}, con(e') = {}, sym(e'') = {}",
            class.sym_e, class.con_eprime, class.sym_esecond
        );
        let forms = normal_forms(&e);
        println!("  form with e_1 = 1: {} via {:?}", forms.form_a, forms.witness_a);
        println!("  form with a difference entry 1: {} via {:?}", forms.form_b, forms.witness_b);
    }

    let e = DefiningTuple::new(3, &[1, 2])?;
    let d = DefiningTuple::new(3, &[2, 1])?;
    match are_isomorphic(&e, &d)? {
        Some(w) => println!("{e} and {d}: e_i = {} * d_({} i)", w.mu, w.lambda),
        None => println!("{e} and {d} are not isomorphic"),
    }

    let classes = DefiningTuple::enumerate(5)?;
    let mut reps: Vec<DefiningTuple> = Vec::new();
    for e in &classes {
        if !reps.iter().any(|r| matches!(are_isomorphic(e, r), Ok(Some(_)))) {
            reps.push(e.clone());
        }
    }
    println!("{} non-constant tuples over F_5 fall into {} isomorphism classes", classes.len(), reps.len());
    Ok(())
}
