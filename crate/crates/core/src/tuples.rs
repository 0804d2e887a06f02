//! Defining tuples of GGS-groups and the invariants read off them.
//!
//! A defining tuple `e = (e_1, …, e_{p-1})` over F_p is indexed from 1. Its
//! first difference tuple `e'_i = e_{i-1} - e_i` is indexed from 2 and its
//! second difference tuple `e''_i = e'_{i-1} - e'_i` from 3. All public
//! accessors use these indices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fplinalg::{inv_mod, is_odd_prime, mul_mod, reduce, FpMatrix, FpScalar, FpVector};

/// A non-constant tuple in F_p^{p-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningTuple {
    p: u32,
    e: Vec<u32>,
}

impl DefiningTuple {
    pub fn new(p: u32, entries: &[i64]) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let expected = p as usize - 1;
        if entries.len() != expected {
            return Err(Error::TupleLength {
                p,
                expected,
                got: entries.len(),
            });
        }
        let e: Vec<u32> = entries.iter().map(|&v| reduce(v, p)).collect();
        if e.iter().all(|&v| v == e[0]) {
            return Err(Error::ConstantTuple);
        }
        Ok(DefiningTuple { p, e })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `e_i` for `i` in `1..=p-1`.
    pub fn get(&self, i: usize) -> FpScalar {
        assert!((1..self.p as usize).contains(&i), "index {i} outside 1..p");
        FpScalar::new(self.e[i - 1] as i64, self.p)
    }

    /// `e_i` with the index taken mod p; `e_0` reads as 0, matching `θ(b)`.
    pub(crate) fn get_cyclic(&self, i: i64) -> u32 {
        let i = i.rem_euclid(self.p as i64) as usize;
        if i == 0 {
            0
        } else {
            self.e[i - 1]
        }
    }

    /// The entries `e_1, …, e_{p-1}` as canonical residues.
    pub fn entries(&self) -> &[u32] {
        &self.e
    }

    pub fn to_vector(&self) -> FpVector {
        FpVector::from_canonical(self.p, self.e.clone())
    }

    /// Every non-constant tuple over F_p, in lexicographic order.
    pub fn enumerate(p: u32) -> Result<Vec<DefiningTuple>> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let len = p as usize - 1;
        let total = (p as u64).pow(len as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut e = vec![0u32; len];
            for slot in e.iter_mut().rev() {
                *slot = (code % p as u64) as u32;
                code /= p as u64;
            }
            if e.iter().any(|&v| v != e[0]) {
                out.push(DefiningTuple { p, e });
            }
        }
        Ok(out)
    }

    /// Parses `p=5 e=1,0,0,1` (a comma after the prime is also accepted).
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = None;
        let mut e = None;
        let mut offset = 0;
        for raw in text.split(|c: char| c.is_whitespace()) {
            let position = offset;
            offset += raw.len() + 1;
            let token = raw.trim_end_matches(',');
            if token.is_empty() {
                continue;
            }
            if let Some(v) = token.strip_prefix("p=") {
                let parsed = v
                    .parse::<u32>()
                    .map_err(|_| Error::parse(position, token, "expected a prime after p="))?;
                p = Some(parsed);
            } else if let Some(v) = token.strip_prefix("e=") {
                e = Some((position, parse_residues(v, position)?));
            } else {
                return Err(Error::parse(position, token, "expected p=… or e=…"));
            }
        }
        let p = p.ok_or_else(|| Error::parse(0, text, "missing p="))?;
        let (_, e) = e.ok_or_else(|| Error::parse(0, text, "missing e="))?;
        DefiningTuple::new(p, &e)
    }
}

/// Parses a comma-separated list of integers such as `1,0,-1,3`.
pub fn parse_residues(text: &str, base_position: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut pos = base_position;
    for tok in text.split(',') {
        let t = tok.trim();
        let v = t
            .parse::<i64>()
            .map_err(|_| Error::parse(pos, t, "expected an integer entry"))?;
        out.push(v);
        pos += tok.len() + 1;
    }
    Ok(out)
}

impl FromStr for DefiningTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DefiningTuple::parse(s)
    }
}

impl fmt::Display for DefiningTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} e={}", self.p, join(&self.e))
    }
}

pub(crate) fn join(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceKind {
    First,
    Second,
}

/// `e'` (indexed `2..=p-1`) or `e''` (indexed `3..=p-1`, empty for p = 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceTuple {
    p: u32,
    kind: DifferenceKind,
    entries: Vec<u32>,
}

impl DifferenceTuple {
    pub fn kind(&self) -> DifferenceKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn first_index(&self) -> usize {
        match self.kind {
            DifferenceKind::First => 2,
            DifferenceKind::Second => 3,
        }
    }

    pub fn get(&self, i: usize) -> FpScalar {
        let lo = self.first_index();
        assert!(i >= lo && i < lo + self.entries.len(), "index {i} out of range");
        FpScalar::new(self.entries[i - lo] as i64, self.p)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for DifferenceTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.entries))
    }
}

/// Anything whose entries can be tested for symmetry and constancy.
pub trait TupleEntries {
    fn values(&self) -> &[u32];
}

impl TupleEntries for DefiningTuple {
    fn values(&self) -> &[u32] {
        &self.e
    }
}

impl TupleEntries for DifferenceTuple {
    fn values(&self) -> &[u32] {
        &self.entries
    }
}

pub fn first_difference(e: &DefiningTuple) -> DifferenceTuple {
    let p = e.p;
    let entries = e.e.windows(2).map(|w| (w[0] + p - w[1]) % p).collect();
    DifferenceTuple {
        p,
        kind: DifferenceKind::First,
        entries,
    }
}

pub fn second_difference(e: &DefiningTuple) -> DifferenceTuple {
    let p = e.p;
    let first = first_difference(e);
    let entries = first.entries.windows(2).map(|w| (w[0] + p - w[1]) % p).collect();
    DifferenceTuple {
        p,
        kind: DifferenceKind::Second,
        entries,
    }
}

/// Symmetry under index reversal. For each of `e`, `e'`, `e''` the paired
/// indices sum to a constant, so this is the palindrome test; empty tuples
/// are symmetric.
pub fn is_symmetric<T: TupleEntries + ?Sized>(t: &T) -> bool {
    let v = t.values();
    v.iter().eq(v.iter().rev())
}

/// All entries equal; empty and single-entry tuples count as constant.
pub fn is_constant<T: TupleEntries + ?Sized>(t: &T) -> bool {
    let v = t.values();
    v.windows(2).all(|w| w[0] == w[1])
}

pub fn sym<T: TupleEntries + ?Sized>(t: &T) -> u32 {
    is_symmetric(t) as u32
}

pub fn con<T: TupleEntries + ?Sized>(t: &T) -> u32 {
    is_constant(t) as u32
}

/// The three binary invariants that drive every index formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TupleClass {
    pub sym_e: u32,
    pub con_eprime: u32,
    pub sym_esecond: u32,
    pub class_value: u32,
}

pub fn classify(e: &DefiningTuple) -> TupleClass {
    let sym_e = sym(e);
    let con_eprime = con(&first_difference(e));
    let sym_esecond = sym(&second_difference(e));
    // A symmetric tuple has a symmetric second difference, so the
    // combination below never goes negative.
    assert!(
        sym_e == 0 || sym_esecond == 1,
        "symmetric {e} with non-symmetric second difference"
    );
    TupleClass {
        sym_e,
        con_eprime,
        sym_esecond,
        class_value: con_eprime + sym_esecond - sym_e,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMatrix {
    /// Kernel = symmetric defining tuples.
    M,
    /// Kernel = tuples with symmetric second difference.
    MDoubleDot,
}

/// The ((p-1)/2) × (p-1) matrix with rows `e_r - e_{p-r}`.
pub fn symmetry_matrix(p: u32) -> FpMatrix {
    let n = p as usize - 1;
    let rows: Vec<Vec<i64>> = (1..=n / 2)
        .map(|r| {
            let mut row = vec![0i64; n];
            row[r - 1] += 1;
            row[p as usize - r - 1] -= 1;
            row
        })
        .collect();
    if rows.is_empty() {
        return FpMatrix::zeros(p, 0, n);
    }
    FpMatrix::from_rows(p, &rows)
}

/// The ((p-3)/2) × (p-1) matrix with rows `e''_j - e''_{p+2-j}` written in
/// terms of `e`, for `j = 3, …, (p+1)/2`.
pub fn second_symmetry_matrix(p: u32) -> FpMatrix {
    let n = p as usize - 1;
    let pu = p as usize;
    // Coefficients of e''_j = e_{j-2} - 2 e_{j-1} + e_j over e_1..e_{p-1}.
    let second = |j: usize| -> Vec<i64> {
        let mut row = vec![0i64; n];
        row[j - 3] += 1;
        row[j - 2] -= 2;
        row[j - 1] += 1;
        row
    };
    let rows: Vec<Vec<i64>> = (3..=pu.div_ceil(2))
        .map(|j| {
            let a = second(j);
            let b = second(pu + 2 - j);
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        })
        .collect();
    if rows.is_empty() {
        return FpMatrix::zeros(p, 0, n);
    }
    FpMatrix::from_rows(p, &rows)
}

/// Kernel membership of `e` in `ker(M)` or `ker(M̈)`.
pub fn symmetry_via_kernel(e: &DefiningTuple, which: SymmetryMatrix) -> bool {
    let m = match which {
        SymmetryMatrix::M => symmetry_matrix(e.p),
        SymmetryMatrix::MDoubleDot => second_symmetry_matrix(e.p),
    };
    m.mul_vec(&e.to_vector()).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearRelation {
    Holds,
    NotApplicable,
}

/// When `e''` is symmetric, `2(e_{p-1} - e_1) + (e_2 - e_{p-2})` vanishes.
pub fn symmetry_relation_check(e: &DefiningTuple) -> Result<LinearRelation> {
    if !is_symmetric(&second_difference(e)) {
        return Ok(LinearRelation::NotApplicable);
    }
    let p = e.p as usize;
    let v = FpScalar::new(2, e.p) * (e.get(p - 1) - e.get(1)) + (e.get(2) - e.get(p - 2));
    if v.is_zero() {
        Ok(LinearRelation::Holds)
    } else {
        Err(Error::TheoremViolation(format!(
            "{e}: symmetric second difference but 2(e_(p-1) - e_1) + (e_2 - e_(p-2)) = {v}"
        )))
    }
}

/// `(λ, μ)` with `e_i = μ · d_{λ i}` for all `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsoWitness {
    pub lambda: u32,
    pub mu: u32,
}

impl IsoWitness {
    pub fn identity() -> Self {
        IsoWitness { lambda: 1, mu: 1 }
    }

    /// The witness for the reverse direction.
    pub fn inverse(self, p: u32) -> Self {
        IsoWitness {
            lambda: inv_mod(self.lambda, p).expect("λ is a unit"),
            mu: inv_mod(self.mu, p).expect("μ is a unit"),
        }
    }

    /// Checks `e_i = μ · d_{λ i}` at every index.
    pub fn validates(self, e: &DefiningTuple, d: &DefiningTuple) -> bool {
        let p = e.p;
        e.p == d.p
            && !self.lambda.is_multiple_of(p)
            && !self.mu.is_multiple_of(p)
            && (1..p as i64).all(|i| {
                e.get_cyclic(i) == mul_mod(self.mu, d.get_cyclic(self.lambda as i64 * i), p)
            })
    }
}

/// The tuple `f` with `f_i = μ · d_{λ i}`; `w` is then a witness for `f ≅ d`.
pub fn transform(d: &DefiningTuple, w: IsoWitness) -> DefiningTuple {
    let p = d.p;
    let e = (1..p as i64)
        .map(|i| mul_mod(w.mu, d.get_cyclic(w.lambda as i64 * i), p))
        .collect();
    DefiningTuple { p, e }
}

fn witnesses(p: u32) -> impl Iterator<Item = IsoWitness> {
    (1..p).flat_map(move |mu| (1..p).map(move |lambda| IsoWitness { lambda, mu }))
}

/// Exhaustive search over all `(p-1)²` pairs, trying scalings μ in the
/// outer loop so that pure relabelings are preferred.
pub fn are_isomorphic(e: &DefiningTuple, d: &DefiningTuple) -> Result<Option<IsoWitness>> {
    if e.p != d.p {
        return Err(Error::Usage(format!(
            "tuples over different primes ({} and {})",
            e.p, d.p
        )));
    }
    Ok(witnesses(e.p).find(|w| w.validates(e, d)))
}

/// Two isomorphic representatives: one with `e_1 = 1`, one with a unit
/// entry in its first difference. Each witness relates the form to `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForms {
    pub form_a: DefiningTuple,
    pub witness_a: IsoWitness,
    pub form_b: DefiningTuple,
    pub witness_b: IsoWitness,
}

pub fn normal_forms(e: &DefiningTuple) -> NormalForms {
    let search = |pred: &dyn Fn(&DefiningTuple) -> bool| {
        witnesses(e.p)
            .map(|w| (transform(e, w), w))
            .find(|(f, _)| pred(f))
            .expect("every non-constant tuple has both normal forms")
    };
    let (form_a, witness_a) = search(&|f| f.e[0] == 1);
    let (form_b, witness_b) = search(&|f| first_difference(f).entries.contains(&1));
    NormalForms {
        form_a,
        witness_a,
        form_b,
        witness_b,
    }
}
