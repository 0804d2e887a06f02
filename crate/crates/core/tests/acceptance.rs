//! Acceptance runner: one line per criterion, nonzero exit if any fails.
//! Every criterion is checked exactly as stated, including its runtime
//! budget; failures print the offending cases below the verdict line.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ggs::circulant::{circ_dim_of_vector, flag_equations, koenig_rados_rank, r_values, stab_rank_t, w_codim, LevelVector};
use ggs::fplinalg::{binomial_mod, FpMatrix, FpVector};
use ggs::formulas::derived_index_log;
use ggs::tuples::{classify, con, first_difference, second_difference, sym, DefiningTuple};
use ggs::verify::{
    branching_level, verify_branching, verify_derived, verify_local_laws, verify_small_quotients, CheckRecord,
    CongruenceQuotient, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: impl Into<String>) -> Self {
        Outcome {
            failures,
            summary: summary.into(),
        }
    }
}

type Criterion = fn() -> Outcome;

fn tuple(p: u32, e: &[i64]) -> DefiningTuple {
    DefiningTuple::new(p, e).expect("valid tuple")
}

fn all(p: u32) -> Vec<DefiningTuple> {
    DefiningTuple::enumerate(p).expect("odd prime")
}

fn record_failure(e: &DefiningTuple, r: &CheckRecord) -> Option<String> {
    (r.verdict != Verdict::Pass).then(|| {
        let note = r.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        format!("{e}: {}: predicted {} computed {}{note}", r.statement, r.predicted, r.computed)
    })
}

fn derived_second(p: u32, tuples: &[DefiningTuple]) -> (Vec<String>, Vec<(DefiningTuple, u64)>) {
    let results: Vec<_> = tuples
        .par_iter()
        .map(|e| {
            let r = verify_derived(e, 2, 3).expect("level 3 suffices for n = 2");
            let log = derived_index_log(e, 2).expect("n = 2");
            (record_failure(e, &r), (e.clone(), log))
        })
        .collect();
    debug_assert!(tuples.iter().all(|e| e.p() == p));
    let failures = results.iter().filter_map(|(f, _)| f.clone()).collect();
    (failures, results.into_iter().map(|(_, v)| v).collect())
}

fn criterion_1() -> Outcome {
    let (mut failures, values) = derived_second(3, &all(3));
    for (e, v) in &values {
        if *v != 6 {
            failures.push(format!("{e}: formula gives {v}, expected 6"));
        }
    }
    Outcome::new(failures, format!("{} tuples, log_3 |Q:Q''| = 6", values.len()))
}

fn criterion_2() -> Outcome {
    let e = tuple(3, &[1, 2]);
    let r = verify_derived(&e, 3, 4).expect("level 4 suffices for n = 3");
    let mut failures: Vec<String> = record_failure(&e, &r).into_iter().collect();
    let log = derived_index_log(&e, 3).expect("n = 3");
    if log != 16 {
        failures.push(format!("formula gives {log}, expected 16"));
    }
    Outcome::new(failures, format!("log_3 |Q:Q'''| computed {}", r.computed["log_index"]))
}

fn criterion_3() -> Outcome {
    let tuples = all(5);
    let (mut failures, values) = derived_second(5, &tuples);
    let asym: BTreeSet<u64> = values.iter().filter(|(e, _)| sym(e) == 0).map(|(_, v)| *v).collect();
    let symm: BTreeSet<u64> = values.iter().filter(|(e, _)| sym(e) == 1).map(|(_, v)| *v).collect();
    if asym != BTreeSet::from([6, 7, 8]) || symm != BTreeSet::from([6]) {
        failures.push(format!("class values seen: non-symmetric {asym:?}, symmetric {symm:?}"));
    }
    if values.len() != 620 {
        failures.push(format!("{} tuples enumerated, expected 620", values.len()));
    }
    Outcome::new(
        failures,
        format!("{} tuples, values {asym:?} and symmetric {symm:?}", values.len()),
    )
}

/// The stabilizer index exactly as printed: `t p^{k−2} + (p^{k−2}−1)/(p−1)·sym(e) + 1`
/// for `k ≥ 2`, and 1 at `k = 1`.
fn printed_stabilizer_log(e: &DefiningTuple, k: u32) -> u64 {
    if k == 1 {
        return 1;
    }
    let p = e.p() as u64;
    let t = stab_rank_t(e).expect("non-constant") as u64;
    t * p.pow(k - 2) + (p.pow(k - 2) - 1) / (p - 1) * sym(e) as u64 + 1
}

fn criterion_4() -> Outcome {
    let tuples: Vec<_> = all(3).into_iter().chain(all(5)).collect();
    let failures: Vec<String> = tuples
        .par_iter()
        .filter_map(|e| {
            let q = CongruenceQuotient::new(e, 3).expect("valid level");
            let computed: Vec<u64> = (1..=3)
                .map(|k| q.log_index(&q.stabilizer(k).expect("k ≤ level")).expect("p-group") as u64)
                .collect();
            let predicted: Vec<u64> = (1..=3).map(|k| printed_stabilizer_log(e, k)).collect();
            (computed != predicted).then(|| format!("{e}: predicted {predicted:?} computed {computed:?}"))
        })
        .collect();
    Outcome::new(failures, format!("{} tuples, k = 1..3", tuples.len()))
}

fn all_vectors(p: u32) -> impl Iterator<Item = FpVector> {
    let n = p as usize;
    (0..(p as usize).pow(p)).map(move |mut i| {
        let coords: Vec<i64> = (0..n)
            .map(|_| {
                let c = i % p as usize;
                i /= p as usize;
                c as i64
            })
            .collect();
        FpVector::new(p, coords)
    })
}

fn rank_agrees(v: &FpVector) -> bool {
    let d = LevelVector::new(v.modulus(), v.entries().iter().map(|&x| x as i64)).expect("length p");
    koenig_rados_rank(&d) == FpMatrix::circulant(v).rank()
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for p in [3, 5] {
        for v in all_vectors(p) {
            count += 1;
            if !rank_agrees(&v) {
                failures.push(format!("p={p} d={v}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(common::SEED);
    for p in [7u32, 11] {
        for _ in 0..1000 {
            let v = FpVector::new(p, (0..p).map(|_| rng.gen_range(0..p) as i64));
            count += 1;
            if !rank_agrees(&v) {
                failures.push(format!("p={p} d={v}"));
            }
        }
    }
    Outcome::new(failures, format!("{count} vectors"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for p in [3u32, 5, 7] {
        let n = p as usize;
        for j in 0..n {
            let row = r_values(&FpVector::unit(p, n, j));
            for i in 1..=n {
                let pascal = binomial_mod(j as u64, (n - i) as u64, p);
                if row[i - 1] != pascal {
                    failures.push(format!("p={p}: R_{i}(unit {j}) = {} but C({j},{}) = {pascal}", row[i - 1], n - i));
                }
            }
        }
        for i in 0..=n {
            let kernel = n - flag_equations(p, n, i).rank();
            if kernel != i {
                failures.push(format!("p={p}: dim Circ_{i} = {kernel}"));
            }
        }
        if p <= 5 {
            let mut counts = vec![0usize; n + 1];
            for v in all_vectors(p) {
                counts[circ_dim_of_vector(&v)] += 1;
            }
            let mut below = 0;
            for (i, c) in counts.iter().enumerate() {
                below += c;
                if below != (p as usize).pow(i as u32) {
                    failures.push(format!("p={p}: {below} vectors with circ_dim ≤ {i}"));
                }
            }
        }
    }
    Outcome::new(failures, "p = 3, 5, 7")
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for p in [3, 5] {
        for e in all(p) {
            count += 1;
            let expected = (con(&first_difference(&e)) + sym(&second_difference(&e))) as usize;
            let got = w_codim(&e);
            if got != expected {
                failures.push(format!("{e}: w_codim {got}, con(e')+sym(e'') = {expected}"));
            }
        }
    }
    Outcome::new(failures, format!("{count} tuples"))
}

fn checked(tuples: &[DefiningTuple], f: impl Fn(&DefiningTuple) -> CheckRecord + Sync) -> Vec<String> {
    let mut out: Vec<(usize, String)> = tuples
        .par_iter()
        .enumerate()
        .filter_map(|(i, e)| record_failure(e, &f(e)).map(|s| (i, s)))
        .collect();
    out.sort();
    out.into_iter().map(|(_, s)| s).collect()
}

fn criterion_8() -> Outcome {
    let tuples: Vec<_> = all(3).into_iter().chain(all(5)).collect();
    let failures = checked(&tuples, |e| verify_branching(e).expect("valid tuple"));
    let class_zero = all(5).iter().filter(|e| classify(e).class_value == 0).count();
    Outcome::new(
        failures,
        format!(
            "p=3 at level {}, p=5 at level {} ({class_zero} class-0 tuples)",
            branching_level(3),
            branching_level(5)
        ),
    )
}

fn criterion_9() -> Outcome {
    let tuples: Vec<_> = all(3).into_iter().chain(all(5)).collect();
    let failures = checked(&tuples, |e| verify_small_quotients(e).expect("valid tuple"));
    Outcome::new(failures, format!("{} tuples", tuples.len()))
}

fn criterion_10() -> Outcome {
    let mut failures = checked(&all(5), |e| verify_local_laws(e, 2).expect("valid depth"));
    let e = tuple(3, &[1, 2]);
    failures.extend(record_failure(&e, &verify_local_laws(&e, 3).expect("valid depth")));
    Outcome::new(failures, "p=5 all tuples k ≤ 2, p=3 e=(1,2) k ≤ 3")
}

fn criterion_11() -> Outcome {
    let suites: [(&str, fn() -> Result<(), String>); 6] = [
        ("section identities", || common::section_identities(common::TRIALS)),
        ("b-exponent homomorphism", || common::b_exponent_homomorphism(common::TRIALS)),
        ("truncation homomorphism", || common::truncation_homomorphism(common::TRIALS)),
        ("contraction termination", || common::contraction_termination(common::TRIALS)),
        ("isomorphism witnesses", || common::isomorphism_witnesses(common::TRIALS)),
        ("formula invariance", common::formula_invariance),
    ];
    let failures = suites
        .iter()
        .filter_map(|(name, run)| run().err().map(|e| format!("{name}: {e}")))
        .collect();
    Outcome::new(failures, format!("{} suites, {} trials each, seed {}", suites.len(), common::TRIALS, common::SEED))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, Criterion); 11] = [
        ("second derived index, all p=3 tuples", Duration::from_secs(5), criterion_1),
        ("third derived index, p=3 e=(1,2)", Duration::from_secs(60), criterion_2),
        ("second derived index, all p=5 tuples", Duration::from_secs(30 * 60), criterion_3),
        ("level-stabilizer index formula, p=3,5", Duration::from_secs(30 * 60), criterion_4),
        ("circulant rank by roots at 1", Duration::from_secs(10), criterion_5),
        ("remainder map and flag dimensions", Duration::from_secs(1), criterion_6),
        ("codimension of the image of G''", Duration::from_secs(5), criterion_7),
        ("branching suite", Duration::from_secs(10 * 60), criterion_8),
        ("small quotients, p=3,5", Duration::from_secs(30 * 60), criterion_9),
        ("iterated local laws", Duration::from_secs(30 * 60), criterion_10),
        ("property suites", Duration::from_secs(10 * 60), criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > *budget {
            outcome.failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name}: {} [{elapsed:.2?}]", i + 1, outcome.summary);
        for f in &outcome.failures {
            println!("        {f}");
        }
        failed += usize::from(!outcome.failures.is_empty());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
