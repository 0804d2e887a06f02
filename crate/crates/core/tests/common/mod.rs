//! Property suites shared by the `properties` test target and the acceptance
//! runner. Each suite runs a fixed number of cases from a seeded generator
//! and reports the first counterexample.

#![allow(dead_code)]

use std::sync::Arc;

use ggs::formulas::{derived_index_log, stabilizer_index_log};
use ggs::treeauto::{Contraction, Generator, TreeWord, Vertex};
use ggs::tuples::{are_isomorphic, classify, transform, DefiningTuple, IsoWitness};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const SEED: u64 = 1;
pub const TRIALS: u32 = 500;
pub const MAX_WORD_LEN: usize = 12;
pub const MAX_DEPTH: usize = 3;

pub fn runner(cases: u32) -> TestRunner {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&SEED.to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

fn tuple_strategy(primes: &'static [u32]) -> impl Strategy<Value = Arc<DefiningTuple>> {
    prop::sample::select(primes)
        .prop_flat_map(|p| prop::collection::vec(0..p as i64, p as usize - 1).prop_map(move |e| (p, e)))
        .prop_filter("non-constant", |(_, e)| e.iter().any(|&x| x != e[0]))
        .prop_map(|(p, e)| Arc::new(DefiningTuple::new(p, &e).expect("valid tuple")))
}

fn letters(max_len: usize) -> impl Strategy<Value = Vec<(bool, i64)>> {
    prop::collection::vec((any::<bool>(), 1i64..5), 0..=max_len)
}

fn word(e: &Arc<DefiningTuple>, letters: &[(bool, i64)]) -> TreeWord {
    TreeWord::from_letters(
        e,
        letters
            .iter()
            .map(|&(is_a, k)| (if is_a { Generator::A } else { Generator::B }, k)),
    )
}

fn vertex(e: &DefiningTuple, digits: &[u32]) -> Vertex {
    Vertex::new(digits.iter().map(|d| d % e.p()).collect(), e.p()).expect("valid vertex")
}

fn vertex_digits() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..5, 0..=MAX_DEPTH)
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// `(gh)|_u = g|_u h|_{u^g}`, `(g|_u)|_v = g|_{uv}` and
/// `g⁻¹|_u = (g|_{u^{g⁻¹}})⁻¹` on random words over p ∈ {3, 5}.
pub fn section_identities(cases: u32) -> Result<(), String> {
    let strategy = (
        tuple_strategy(&[3, 5]),
        letters(MAX_WORD_LEN),
        letters(MAX_WORD_LEN),
        vertex_digits(),
        vertex_digits(),
    );
    finish(runner(cases).run(&strategy, |(e, l1, l2, u, v)| {
        let (g, h) = (word(&e, &l1), word(&e, &l2));
        let u = vertex(&e, &u);
        let v = vertex(&e, &v[..v.len().min(MAX_DEPTH - u.level())]);
        let product = g.mul(&h).section(&u);
        prop_assert!(product.equal(&g.section(&u).mul(&h.section(&g.act_on(&u)))));
        let mut uv = u.digits.clone();
        uv.extend(&v.digits);
        let uv = Vertex { digits: uv };
        prop_assert!(g.section(&u).section(&v).equal(&g.section(&uv)));
        let ginv = g.inverse();
        prop_assert!(ginv.section(&u).equal(&g.section(&ginv.act_on(&u)).inverse()));
        Ok(())
    }))
}

/// The `b`-exponent sum is additive, vanishes on commutators and p-th powers.
pub fn b_exponent_homomorphism(cases: u32) -> Result<(), String> {
    let strategy = (tuple_strategy(&[3, 5]), letters(MAX_WORD_LEN), letters(MAX_WORD_LEN));
    finish(runner(cases).run(&strategy, |(e, l1, l2)| {
        let (g, h) = (word(&e, &l1), word(&e, &l2));
        prop_assert_eq!(g.mul(&h).b_exponent(), g.b_exponent() + h.b_exponent());
        prop_assert!(g.commutator(&h).b_exponent().is_zero());
        prop_assert!(g.pow(e.p() as i64).b_exponent().is_zero());
        Ok(())
    }))
}

/// Truncation is a homomorphism into the level-n permutation group.
pub fn truncation_homomorphism(cases: u32) -> Result<(), String> {
    let strategy = (tuple_strategy(&[3, 5]), letters(MAX_WORD_LEN), letters(MAX_WORD_LEN), 1usize..=3);
    finish(runner(cases).run(&strategy, |(e, l1, l2, n)| {
        let (g, h) = (word(&e, &l1), word(&e, &l2));
        prop_assert_eq!(g.mul(&h).truncate(n), g.truncate(n).mul(&h.truncate(n)));
        Ok(())
    }))
}

/// Every word of length at most 12 contracts within depth 12.
pub fn contraction_termination(cases: u32) -> Result<(), String> {
    let strategy = (tuple_strategy(&[3, 5]), letters(MAX_WORD_LEN));
    finish(runner(cases).run(&strategy, |(e, l)| {
        let g = word(&e, &l);
        prop_assert_ne!(g.contract(MAX_WORD_LEN), Contraction::NotContracted);
        Ok(())
    }))
}

/// Returned witnesses satisfy `e_i = μ d_{λi}`; the relation is reflexive
/// and symmetric, and transforms of a tuple are found isomorphic.
pub fn isomorphism_witnesses(cases: u32) -> Result<(), String> {
    let strategy = (tuple_strategy(&[3, 5, 7]), 1u32..7, 1u32..7, tuple_strategy(&[3, 5, 7]));
    finish(runner(cases).run(&strategy, |(e, lambda, mu, other)| {
        let p = e.p();
        prop_assert_eq!(are_isomorphic(&e, &e).unwrap(), Some(IsoWitness::identity()));
        let w = IsoWitness {
            lambda: 1 + (lambda - 1) % (p - 1),
            mu: 1 + (mu - 1) % (p - 1),
        };
        let f = transform(&e, w);
        let found = are_isomorphic(&f, &e).unwrap();
        prop_assert!(found.is_some_and(|w| w.validates(&f, &e)));
        let back = are_isomorphic(&e, &f).unwrap();
        prop_assert!(back.is_some_and(|w| w.validates(&e, &f)));
        prop_assert!(found.unwrap().inverse(p).validates(&e, &f));
        if other.p() == p {
            if let Some(w) = are_isomorphic(&e, &other).unwrap() {
                prop_assert!(w.validates(&e, &other));
            }
        }
        Ok(())
    }))
}

/// Isomorphic tuples share class bits and every index formula value for
/// `n ≤ 6`, exhaustively over all pairs at p = 5.
pub fn formula_invariance() -> Result<(), String> {
    let all = DefiningTuple::enumerate(5).map_err(|e| e.to_string())?;
    for e in &all {
        for d in &all {
            if are_isomorphic(e, d).map_err(|x| x.to_string())?.is_none() {
                continue;
            }
            if classify(e) != classify(d) {
                return Err(format!("class differs for {e} and {d}"));
            }
            for n in 1..=6 {
                let same = derived_index_log(e, n).ok() == derived_index_log(d, n).ok()
                    && stabilizer_index_log(e, n).ok() == stabilizer_index_log(d, n).ok();
                if !same {
                    return Err(format!("index formulas differ for {e} and {d} at n = {n}"));
                }
            }
        }
    }
    Ok(())
}
