//! Exact linear algebra over a prime field F_p.
//!
//! Residues are always kept canonical in `0..p`. Matrices are dense and
//! row-major; every matrix in this crate is at most p×p for small p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// True iff `p` is an odd prime.
pub fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub(crate) fn reduce(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    Some(pow_mod(a, p as u64 - 2, p))
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    /// Reduces `value` into `0..p`; negative inputs are fine.
    pub fn new(value: i64, p: u32) -> Self {
        FpScalar {
            value: reduce(value, p),
            p,
        }
    }

    pub fn zero(p: u32) -> Self {
        FpScalar { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        FpScalar { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        inv_mod(self.value, self.p).map(|value| FpScalar { value, p: self.p })
    }

    pub fn pow(self, exp: u64) -> Self {
        FpScalar {
            value: pow_mod(self.value, exp, self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: (self.value + rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: (self.value + self.p - rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

/// A vector over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn new<I: IntoIterator<Item = i64>>(p: u32, entries: I) -> Self {
        FpVector {
            p,
            entries: entries.into_iter().map(|v| reduce(v, p)).collect(),
        }
    }

    pub fn zeros(p: u32, len: usize) -> Self {
        FpVector {
            p,
            entries: vec![0; len],
        }
    }

    pub fn unit(p: u32, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(p, len);
        v.entries[index] = 1;
        v
    }

    pub(crate) fn from_canonical(p: u32, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&v| v < p));
        FpVector { p, entries }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> FpScalar {
        FpScalar {
            value: self.entries[i],
            p: self.p,
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.len(), other.len());
        let p = self.p;
        FpVector {
            p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn scale(&self, c: FpScalar) -> FpVector {
        let p = self.p;
        FpVector {
            p,
            entries: self.entries.iter().map(|&a| mul_mod(a, c.value(), p)).collect(),
        }
    }

    pub fn dot(&self, other: &FpVector) -> FpScalar {
        assert_eq!(self.len(), other.len());
        let p = self.p as u64;
        let s = self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
        FpScalar::new(s as i64, self.p)
    }

    /// Cyclic coordinate shift: entry i moves to position i+1.
    pub fn cyclic_shift(&self) -> FpVector {
        let mut entries = self.entries.clone();
        entries.rotate_right(1);
        FpVector { p: self.p, entries }
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| reduce(v, p)).collect(),
        }
    }

    pub fn from_vectors(p: u32, cols: usize, rows: &[FpVector]) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols && r.modulus() == p));
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.entries.iter().copied()).collect(),
        }
    }

    /// The p×p (or n×n) circulant matrix whose rows are the cyclic shifts of `v`.
    pub fn circulant(v: &FpVector) -> Self {
        let n = v.len();
        let mut rows = Vec::with_capacity(n);
        let mut cur = v.clone();
        for _ in 0..n {
            rows.push(cur.clone());
            cur = cur.cyclic_shift();
        }
        Self::from_vectors(v.modulus(), n, &rows)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FpScalar {
        FpScalar {
            value: self.data[r * self.cols + c],
            p: self.p,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: FpScalar) {
        self.data[r * self.cols + c] = value.value();
    }

    pub fn row(&self, r: usize) -> FpVector {
        FpVector {
            p: self.p,
            entries: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &FpVector) -> FpVector {
        assert_eq!(v.len(), self.cols);
        FpVector {
            p: self.p,
            entries: (0..self.rows).map(|r| self.row(r).dot(v).value()).collect(),
        }
    }

    /// Reduced row echelon form by Gauss–Jordan elimination. Zero rows sink
    /// to the bottom; the shape is unchanged.
    pub fn row_reduce(&self) -> FpMatrix {
        self.rref_with_pivots().0
    }

    fn rref_with_pivots(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let cols = self.cols;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..cols {
                    m.data.swap(pr * cols + k, lead * cols + k);
                }
            }
            let inv = inv_mod(m.data[lead * cols + c], p).expect("nonzero pivot");
            for k in 0..cols {
                let idx = lead * cols + k;
                m.data[idx] = mul_mod(m.data[idx], inv, p);
            }
            for r in 0..m.rows {
                let f = m.data[r * cols + c];
                if r == lead || f == 0 {
                    continue;
                }
                for k in 0..cols {
                    let sub = mul_mod(f, m.data[lead * cols + k], p);
                    let idx = r * cols + k;
                    m.data[idx] = (m.data[idx] + p - sub) % p;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// A basis of the right kernel `{ v : self · v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let p = self.p;
        let (rref, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let x = rref.data[r * self.cols + free];
                v[pc] = (p - x) % p;
            }
            basis.push(FpVector { p, entries: v });
        }
        basis
    }

    /// Whether the two matrices have the same row space.
    pub fn same_row_space(&self, other: &FpMatrix) -> bool {
        if self.cols != other.cols || self.p != other.p {
            return false;
        }
        let a = self.row_reduce();
        let b = other.row_reduce();
        let nonzero = |m: &FpMatrix| -> Vec<FpVector> {
            (0..m.rows).map(|r| m.row(r)).filter(|r| !r.is_zero()).collect()
        };
        nonzero(&a) == nonzero(&b)
    }
}

/// Binomial coefficient C(n, k) mod p, by Lucas' theorem. Zero for k > n.
pub fn binomial_mod(n: u64, k: u64, p: u32) -> FpScalar {
    let pp = p as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32 % p;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % pp, k % pp);
        if kd > nd {
            return FpScalar::zero(p);
        }
        acc = mul_mod(acc, small_binomial_mod(nd as u32, kd as u32, p), p);
        n /= pp;
        k /= pp;
    }
    FpScalar { value: acc, p }
}

// n, k < p, so every factor in the denominator is invertible.
fn small_binomial_mod(n: u32, k: u32, p: u32) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, inv_mod(den, p).expect("k < p"), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let odd: Vec<u32> = (0..40).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn scalar_arithmetic() {
        let a = FpScalar::new(-1, 5);
        assert_eq!(a.value(), 4);
        assert_eq!((a + FpScalar::new(3, 5)).value(), 2);
        assert_eq!((FpScalar::new(1, 5) - a).value(), 2);
        assert_eq!((a * a).value(), 1);
        assert_eq!((-a).value(), 1);
        assert_eq!(FpScalar::new(3, 7).inv().unwrap().value(), 5);
        assert!(FpScalar::zero(7).inv().is_none());
    }

    #[test]
    fn row_reduce_fixed_points() {
        let z = FpMatrix::zeros(5, 3, 4);
        assert_eq!(z.row_reduce(), z);
        let id = FpMatrix::identity(7, 4);
        assert_eq!(id.row_reduce(), id);
    }

    #[test]
    fn row_reduce_is_idempotent_and_keeps_row_space() {
        let m = FpMatrix::from_rows(5, &[vec![2, 4, 1], vec![1, 2, 3], vec![3, 1, 0]]);
        let r = m.row_reduce();
        assert_eq!(r.row_reduce(), r);
        assert!(m.same_row_space(&r));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::zeros(3, 3, 3).rank(), 0);
        assert_eq!(FpMatrix::identity(5, 5).rank(), 5);
        let ones = FpVector::new(3, [1, 1, 1]);
        assert_eq!(FpMatrix::circulant(&ones).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(5, 4).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(3, 2, 2).kernel_basis().len(), 2);
        let m = FpMatrix::from_rows(7, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 4 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_mod(4, 2, 3).value(), 0);
        assert_eq!(binomial_mod(7, 3, 5).value(), 0);
        assert_eq!(binomial_mod(6, 2, 7).value(), 1);
        assert_eq!(binomial_mod(2, 5, 7).value(), 0);
        for n in 0..30 {
            assert_eq!(binomial_mod(n, 0, 5).value(), 1);
        }
    }

    // Exact integer binomials, independent of Lucas' theorem.
    fn exact_binomial(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }

    #[test]
    fn binomial_matches_pascal_recurrence_and_exact_values() {
        for p in [3u32, 5, 7] {
            let bound = 3 * p as u64;
            for n in 1..=bound {
                for k in 1..=bound {
                    let lhs = binomial_mod(n, k, p);
                    let rhs = binomial_mod(n - 1, k, p) + binomial_mod(n - 1, k - 1, p);
                    assert_eq!(lhs, rhs, "C({n},{k}) mod {p}");
                    assert_eq!(lhs.value() as u128, exact_binomial(n, k) % p as u128);
                }
            }
        }
    }
}
