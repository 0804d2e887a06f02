//! Circulant spaces over F_p.
//!
//! The cyclically invariant subspaces of F_p^n form a single full flag
//! `0 = Circ_0 < Circ_1 < … < Circ_n`. Which member a vector generates is
//! read off the remainders of iterated division of its coefficient
//! polynomial `E_d = Σ d_i X^i` by `X - 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fplinalg::{binomial_mod, FpMatrix, FpScalar, FpVector};
use crate::tuples::{first_difference, DefiningTuple};

/// A vector of F_p^p indexed by the first-level vertices `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelVector(FpVector);

impl LevelVector {
    pub fn new<I: IntoIterator<Item = i64>>(p: u32, coords: I) -> Result<Self> {
        let v = FpVector::new(p, coords);
        if v.len() != p as usize {
            return Err(Error::Usage(format!(
                "level vector over F_{p} needs {p} coordinates, got {}",
                v.len()
            )));
        }
        Ok(LevelVector(v))
    }

    pub fn zero(p: u32) -> Self {
        LevelVector(FpVector::zeros(p, p as usize))
    }

    pub fn p(&self) -> u32 {
        self.0.modulus()
    }

    pub fn coords(&self) -> &[u32] {
        self.0.entries()
    }

    pub fn as_vector(&self) -> &FpVector {
        &self.0
    }

    pub fn shift(&self) -> LevelVector {
        LevelVector(self.0.cyclic_shift())
    }
}

impl From<LevelVector> for FpVector {
    fn from(v: LevelVector) -> FpVector {
        v.0
    }
}

impl fmt::Display for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rank of the circulant matrix of `d` (any length n): `n - m` where `m` is
/// the multiplicity of 1 as a root of `E_d`. The zero vector has rank 0.
pub fn circulant_rank(d: &FpVector) -> usize {
    let p = d.modulus();
    let n = d.len();
    let mut poly: Vec<u32> = d.entries().to_vec();
    while poly.last() == Some(&0) {
        poly.pop();
    }
    if poly.is_empty() {
        return 0;
    }
    let mut multiplicity = 0;
    loop {
        let (quotient, remainder) = divide_by_x_minus_one(&poly, p);
        if remainder != 0 {
            break;
        }
        multiplicity += 1;
        poly = quotient;
    }
    n - multiplicity
}

// Synthetic division of Σ q_k X^k by (X - 1).
fn divide_by_x_minus_one(poly: &[u32], p: u32) -> (Vec<u32>, u32) {
    if poly.is_empty() {
        return (Vec::new(), 0);
    }
    let mut quotient = vec![0u32; poly.len() - 1];
    let mut carry = 0u32;
    for k in (1..poly.len()).rev() {
        carry = (carry + poly[k]) % p;
        quotient[k - 1] = carry;
    }
    let remainder = (carry + poly[0]) % p;
    (quotient, remainder)
}

pub fn koenig_rados_rank(d: &LevelVector) -> usize {
    circulant_rank(&d.0)
}

/// `(R_1, …, R_n)`: `R_n` is the remainder of `E_d` on division by `X - 1`,
/// `R_{n-1}` the remainder of the quotient, and so on down to `R_1`.
pub fn r_values(d: &FpVector) -> Vec<FpScalar> {
    let p = d.modulus();
    let n = d.len();
    let mut out = vec![FpScalar::zero(p); n];
    let mut poly = d.entries().to_vec();
    for i in (0..n).rev() {
        let (quotient, remainder) = divide_by_x_minus_one(&poly, p);
        out[i] = FpScalar::new(remainder as i64, p);
        poly = quotient;
    }
    out
}

pub fn r_map(d: &LevelVector) -> Vec<FpScalar> {
    r_values(&d.0)
}

/// `R_i = Σ_{j=n-i}^{n-1} C(j, n-i) d_j`, the binomial closed form of the
/// remainders. Kept independent of [`r_values`] as a cross-check.
pub fn r_values_closed_form(d: &FpVector) -> Vec<FpScalar> {
    let p = d.modulus();
    let n = d.len();
    (1..=n)
        .map(|i| {
            (n - i..n).fold(FpScalar::zero(p), |acc, j| {
                acc + binomial_mod(j as u64, (n - i) as u64, p) * d.get(j)
            })
        })
        .collect()
}

/// Largest `i` with `R_i ≠ 0`, or 0 for the zero vector.
pub fn circ_dim_of_vector(d: &FpVector) -> usize {
    r_values(d)
        .iter()
        .rposition(|r| !r.is_zero())
        .map_or(0, |i| i + 1)
}

pub fn circ_dim(d: &LevelVector) -> usize {
    circ_dim_of_vector(&d.0)
}

/// The flag is linearly ordered, so the circulant space of a set is the
/// largest of the individual ones.
pub fn circ_dim_of_set<'a, I: IntoIterator<Item = &'a LevelVector>>(ds: I) -> usize {
    ds.into_iter().map(circ_dim).max().unwrap_or(0)
}

/// Membership in `Circ_i(V) = { d : rk Circ(d) ≤ i }`.
pub fn flag_member(d: &LevelVector, i: usize) -> Result<bool> {
    if i > d.p() as usize {
        return Err(Error::Usage(format!("flag index {i} exceeds dimension {}", d.p())));
    }
    Ok(circ_dim(d) <= i)
}

/// The matrix whose kernel is `Circ_i` of F_p^n: rows are the linear maps
/// `R_{i+1}, …, R_n` in the standard basis.
pub fn flag_equations(p: u32, n: usize, i: usize) -> FpMatrix {
    let columns: Vec<Vec<FpScalar>> = (0..n)
        .map(|j| r_values(&FpVector::unit(p, n, j)))
        .collect();
    let rows: Vec<Vec<i64>> = (i..n)
        .map(|r| columns.iter().map(|c| c[r].value() as i64).collect())
        .collect();
    if rows.is_empty() {
        return FpMatrix::zeros(p, 0, n);
    }
    FpMatrix::from_rows(p, &rows)
}

/// `θ(b) = (0, e_1, …, e_{p-1})`.
pub fn theta_b(e: &DefiningTuple) -> LevelVector {
    let mut coords = vec![0i64];
    coords.extend(e.entries().iter().map(|&v| v as i64));
    LevelVector::new(e.p(), coords).expect("p coordinates")
}

/// `θ([b,a]) = (e_{p-1}, -e_1, e'_2, …, e'_{p-1})`.
pub fn theta_c(e: &DefiningTuple) -> LevelVector {
    let p = e.p() as usize;
    let mut coords = vec![e.get(p - 1).value() as i64, -(e.get(1).value() as i64)];
    coords.extend(first_difference(e).entries().iter().map(|&v| v as i64));
    LevelVector::new(e.p(), coords).expect("p coordinates")
}

/// The circulant rank `t` of `θ(b)`; always in `2..=p`.
pub fn stab_rank_t(e: &DefiningTuple) -> Result<usize> {
    let t = koenig_rados_rank(&theta_b(e));
    if t < 2 {
        return Err(Error::TheoremViolation(format!("{e}: circulant rank t = {t} < 2")));
    }
    Ok(t)
}

/// `θ([c, c_i])` for `i` in `1..=(p-1)/2`, read modulo `γ_3`.
pub fn commutator_vector(e: &DefiningTuple, i: usize) -> Result<LevelVector> {
    let p = e.p() as usize;
    if i == 0 || i > (p - 1) / 2 {
        return Err(Error::Usage(format!(
            "commutator index {i} outside 1..={}",
            (p - 1) / 2
        )));
    }
    let ep = first_difference(e);
    let d1 = |k: usize| ep.get(k).value() as i64;
    let mut coords = vec![0i64; p];
    if i == 1 {
        coords[0] = -d1(p - 1);
        coords[1] = e.get(p - 1).value() as i64 - e.get(1).value() as i64;
        coords[2] -= d1(2);
    } else {
        coords[0] = -d1(p - i);
        coords[1] = d1(p - i + 1);
        coords[i] = d1(i);
        coords[i + 1] = -d1(i + 1);
    }
    LevelVector::new(e.p(), coords)
}

/// All `d_i = θ([c, c_i])`, `i = 1..=(p-1)/2`.
pub fn commutator_vectors(e: &DefiningTuple) -> Vec<LevelVector> {
    (1..=(e.p() as usize - 1) / 2)
        .map(|i| commutator_vector(e, i).expect("index in range"))
        .collect()
}

/// Codimension in F_p^p of the circulant space spanned by the `d_i`.
pub fn w_codim(e: &DefiningTuple) -> usize {
    e.p() as usize - circ_dim_of_set(&commutator_vectors(e))
}
