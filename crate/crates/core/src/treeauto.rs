//! Automorphisms of the p-regular rooted tree generated by the rooted
//! p-cycle `a` and the directed generator `b = ψ⁻¹(0: b, x: a^{e_x})`.
//!
//! Elements are words in `a` and `b`. Sections are computed by rewriting
//! letter by letter and collapsing syllables, which strictly shortens any
//! word with at least two `b`-syllables. That makes equality decidable by
//! descending into sections until every branch is trivially settled.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fplinalg::{mul_mod, reduce, FpScalar};
use crate::permgrp::Permutation;
use crate::tuples::DefiningTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    B,
}

/// `gen^exp` with `exp` in `1..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: u32,
}

/// A vertex of the tree as a digit string; the empty string is the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vertex {
    pub digits: Vec<u32>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex::default()
    }

    pub fn new(digits: Vec<u32>, p: u32) -> Result<Self> {
        if let Some(pos) = digits.iter().position(|&d| d >= p) {
            return Err(Error::parse(pos, digits[pos].to_string(), format!("digit must be below {p}")));
        }
        Ok(Vertex { digits })
    }

    /// Parses a digit string such as `"021"`.
    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let mut digits = Vec::with_capacity(text.len());
        for (pos, ch) in text.trim().chars().enumerate() {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::parse(pos, ch.to_string(), "expected a digit"))?;
            if d >= p {
                return Err(Error::parse(pos, ch.to_string(), format!("digit must be below {p}")));
            }
            digits.push(d);
        }
        Ok(Vertex { digits })
    }

    pub fn level(&self) -> usize {
        self.digits.len()
    }

    /// Lexicographic position among the vertices of its level.
    pub fn index(&self, p: u32) -> usize {
        self.digits.iter().fold(0, |acc, &d| acc * p as usize + d as usize)
    }

    pub fn from_index(mut index: usize, level: usize, p: u32) -> Self {
        let mut digits = vec![0u32; level];
        for slot in digits.iter_mut().rev() {
            *slot = (index % p as usize) as u32;
            index /= p as usize;
        }
        Vertex { digits }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "∅");
        }
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NucleusElement {
    PowerOfA(u32),
    PowerOfB(u32),
}

impl fmt::Display for NucleusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NucleusElement::PowerOfA(0) => write!(f, "1"),
            NucleusElement::PowerOfA(k) => write!(f, "a^{k}"),
            NucleusElement::PowerOfB(k) => write!(f, "b^{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contraction {
    /// The word itself already lies in `⟨a⟩ ∪ ⟨b⟩`.
    Nucleus(NucleusElement),
    /// First level at which every section lies in the nucleus.
    AtLevel(usize),
    NotContracted,
}

/// A freely reduced word in `a`, `b` over a fixed defining tuple.
#[derive(Clone, Debug)]
pub struct TreeWord {
    tuple: Arc<DefiningTuple>,
    letters: Vec<Letter>,
}

impl PartialEq for TreeWord {
    /// Syntactic equality of reduced words; use [`TreeWord::equal`] for
    /// equality of the automorphisms.
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.tuple == other.tuple
    }
}

impl Eq for TreeWord {}

impl TreeWord {
    pub fn identity(tuple: &Arc<DefiningTuple>) -> Self {
        TreeWord {
            tuple: Arc::clone(tuple),
            letters: Vec::new(),
        }
    }

    pub fn a(tuple: &Arc<DefiningTuple>) -> Self {
        Self::from_letters(tuple, [(Generator::A, 1)])
    }

    pub fn b(tuple: &Arc<DefiningTuple>) -> Self {
        Self::from_letters(tuple, [(Generator::B, 1)])
    }

    pub fn a_pow(tuple: &Arc<DefiningTuple>, k: i64) -> Self {
        Self::from_letters(tuple, [(Generator::A, k)])
    }

    pub fn b_pow(tuple: &Arc<DefiningTuple>, k: i64) -> Self {
        Self::from_letters(tuple, [(Generator::B, k)])
    }

    /// `c = [b, a]`.
    pub fn c(tuple: &Arc<DefiningTuple>) -> Self {
        Self::b(tuple).commutator(&Self::a(tuple))
    }

    /// `c_i = c^{a^i}`.
    pub fn c_i(tuple: &Arc<DefiningTuple>, i: i64) -> Self {
        Self::c(tuple).conjugate_by_a_power(i)
    }

    /// Builds and reduces a word; exponents are taken mod p.
    pub fn from_letters<I: IntoIterator<Item = (Generator, i64)>>(tuple: &Arc<DefiningTuple>, letters: I) -> Self {
        let p = tuple.p();
        let mut w = TreeWord::identity(tuple);
        for (gen, exp) in letters {
            w.push(gen, reduce(exp, p));
        }
        w
    }

    /// Parses whitespace-separated letters `a`, `b` with optional `^k`,
    /// e.g. `"b a^2 b^-1 a"`. `1` and the empty string denote the identity.
    pub fn parse(tuple: &Arc<DefiningTuple>, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for raw in text.split(' ') {
            let pos = offset;
            offset += raw.chars().count() + 1;
            let tok = raw.trim();
            if tok.is_empty() || tok == "1" {
                continue;
            }
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => {
                    let k = e
                        .parse::<i64>()
                        .map_err(|_| Error::parse(pos, tok, "exponent must be an integer"))?;
                    (h, k)
                }
                None => (tok, 1),
            };
            let gen = match head {
                "a" => Generator::A,
                "b" => Generator::B,
                _ => return Err(Error::parse(pos, tok, "expected a letter 'a' or 'b'")),
            };
            letters.push((gen, exp));
        }
        Ok(Self::from_letters(tuple, letters))
    }

    pub fn tuple(&self) -> &Arc<DefiningTuple> {
        &self.tuple
    }

    pub fn p(&self) -> u32 {
        self.tuple.p()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables of the reduced word.
    pub fn syllable_len(&self) -> usize {
        self.letters.len()
    }

    pub fn b_syllables(&self) -> usize {
        self.letters.iter().filter(|l| l.gen == Generator::B).count()
    }

    fn push(&mut self, gen: Generator, exp: u32) {
        let p = self.p();
        if exp.is_multiple_of(p) {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp = (last.exp + exp) % p;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(Letter { gen, exp: exp % p }),
        }
    }

    pub fn mul(&self, other: &TreeWord) -> TreeWord {
        debug_assert_eq!(self.tuple, other.tuple);
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen, l.exp);
        }
        w
    }

    pub fn inverse(&self) -> TreeWord {
        let p = self.p();
        let mut w = TreeWord::identity(&self.tuple);
        for l in self.letters.iter().rev() {
            w.push(l.gen, p - l.exp);
        }
        w
    }

    pub fn pow(&self, k: i64) -> TreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = TreeWord::identity(&self.tuple);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, other: &TreeWord) -> TreeWord {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conjugate(&self, by: &TreeWord) -> TreeWord {
        by.inverse().mul(self).mul(by)
    }

    /// `w^{a^i}`. For a level-1 stabilizing `w` its section at `j` is the
    /// section of `w` at `j - i`.
    pub fn conjugate_by_a_power(&self, i: i64) -> TreeWord {
        self.conjugate(&TreeWord::a_pow(&self.tuple, i))
    }

    /// The exponent `k` such that `w` acts on the first level as `a^k`.
    pub fn root_action(&self) -> FpScalar {
        let p = self.p();
        let k = self
            .letters
            .iter()
            .filter(|l| l.gen == Generator::A)
            .fold(0u32, |acc, l| (acc + l.exp) % p);
        FpScalar::new(k as i64, p)
    }

    /// Sum of `b`-exponents mod p; a homomorphism `G → F_p`.
    pub fn b_exponent(&self) -> FpScalar {
        let p = self.p();
        let k = self
            .letters
            .iter()
            .filter(|l| l.gen == Generator::B)
            .fold(0u32, |acc, l| (acc + l.exp) % p);
        FpScalar::new(k as i64, p)
    }

    /// Section at the first-level vertex `x`, using `(gh)|_x = g|_x h|_{x^g}`.
    pub fn section_at(&self, x: u32) -> TreeWord {
        let p = self.p();
        let mut pos = x % p;
        let mut out = TreeWord::identity(&self.tuple);
        for l in &self.letters {
            match l.gen {
                Generator::A => pos = (pos + l.exp) % p,
                Generator::B => {
                    if pos == 0 {
                        out.push(Generator::B, l.exp);
                    } else {
                        out.push(Generator::A, mul_mod(l.exp, self.tuple.get_cyclic(pos as i64), p));
                    }
                }
            }
        }
        out
    }

    /// `w|_v`, composing first-level sections digit by digit.
    pub fn section(&self, v: &Vertex) -> TreeWord {
        v.digits.iter().fold(self.clone(), |w, &x| w.section_at(x))
    }

    /// The p first-level sections of a level-1 stabilizing word.
    pub fn psi(&self) -> Result<Vec<TreeWord>> {
        let k = self.root_action();
        if !k.is_zero() {
            return Err(Error::Precondition(format!(
                "psi needs a first-level stabilizer, but the root action is a^{k}"
            )));
        }
        Ok((0..self.p()).map(|x| self.section_at(x)).collect())
    }

    /// Image of a vertex under the automorphism (right action).
    pub fn act_on(&self, v: &Vertex) -> Vertex {
        let mut digits = v.digits.clone();
        for l in &self.letters {
            apply_letter(&self.tuple, *l, &mut digits);
        }
        Vertex { digits }
    }

    /// Whether the word represents the identity automorphism.
    pub fn is_identity(&self) -> bool {
        if self.letters.is_empty() {
            return true;
        }
        if !self.root_action().is_zero() {
            return false;
        }
        // A single b-syllable with trivial root action is a conjugate of a
        // nontrivial power of b.
        if self.b_syllables() <= 1 {
            return false;
        }
        (0..self.p()).all(|x| self.section_at(x).is_identity())
    }

    /// Equality of the represented automorphisms.
    pub fn equal(&self, other: &TreeWord) -> bool {
        debug_assert_eq!(self.tuple, other.tuple);
        self.mul(&other.inverse()).is_identity()
    }

    /// Identifies the word with an element of `⟨a⟩ ∪ ⟨b⟩`, if it is one.
    pub fn nucleus_element(&self) -> Option<NucleusElement> {
        let k = self.root_action().value();
        if k != 0 {
            return self
                .equal(&TreeWord::a_pow(&self.tuple, k as i64))
                .then_some(NucleusElement::PowerOfA(k));
        }
        let j = self.b_exponent().value();
        if !self.equal(&TreeWord::b_pow(&self.tuple, j as i64)) {
            return None;
        }
        Some(if j == 0 {
            NucleusElement::PowerOfA(0)
        } else {
            NucleusElement::PowerOfB(j)
        })
    }

    pub fn default_depth_budget(&self) -> usize {
        2 + self.syllable_len()
    }

    /// Descends through sections until every branch lies in the nucleus.
    /// The nucleus is closed under sections, so branches that reach it are
    /// not expanded further.
    pub fn contract(&self, depth_budget: usize) -> Contraction {
        if let Some(n) = self.nucleus_element() {
            return Contraction::Nucleus(n);
        }
        let mut frontier = vec![self.clone()];
        for level in 1..=depth_budget {
            frontier = frontier
                .iter()
                .flat_map(|w| (0..self.p()).map(move |x| w.section_at(x)))
                .filter(|s| s.nucleus_element().is_none())
                .collect();
            if frontier.is_empty() {
                return Contraction::AtLevel(level);
            }
        }
        Contraction::NotContracted
    }

    /// The permutation induced on the `p^n` level-`n` vertices, ordered
    /// lexicographically.
    pub fn truncate(&self, n: usize) -> Permutation {
        let p = self.p();
        let degree = (p as usize).pow(n as u32);
        let images = (0..degree)
            .map(|i| {
                let mut digits = Vertex::from_index(i, n, p).digits;
                for l in &self.letters {
                    apply_letter(&self.tuple, *l, &mut digits);
                }
                Vertex { digits }.index(p) as u32
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

fn apply_letter(tuple: &DefiningTuple, l: Letter, digits: &mut [u32]) {
    let p = tuple.p();
    if digits.is_empty() {
        return;
    }
    match l.gen {
        Generator::A => digits[0] = (digits[0] + l.exp) % p,
        Generator::B => {
            // b^k descends along the 0-spine and rotates the subtree below
            // the first vertex off it by a^{k e_x}.
            if let Some(i) = digits.iter().position(|&d| d != 0) {
                if i + 1 < digits.len() {
                    let x = digits[i];
                    digits[i + 1] = (digits[i + 1] + mul_mod(l.exp, tuple.get_cyclic(x as i64), p)) % p;
                }
            }
        }
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let p = self.p() as i64;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = match l.gen {
                Generator::A => 'a',
                Generator::B => 'b',
            };
            let e = l.exp as i64;
            let signed = if e > p / 2 { e - p } else { e };
            if signed == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{signed}")?;
            }
        }
        Ok(())
    }
}

/// A level-1 stabilizing word whose section at `x` is the generator `gen`.
pub fn fractal_lift(tuple: &Arc<DefiningTuple>, x: u32, gen: Generator) -> TreeWord {
    let p = tuple.p();
    // b^{a^i} has b at position i and a^{e_{j-i}} at the other positions j.
    match gen {
        Generator::B => TreeWord::b(tuple).conjugate_by_a_power(x as i64),
        Generator::A => {
            let i = (0..p)
                .find(|&i| tuple.get_cyclic(x as i64 - i as i64) != 0)
                .expect("non-constant tuple has a nonzero entry");
            let coeff = tuple.get_cyclic(x as i64 - i as i64);
            let inv = FpScalar::new(coeff as i64, p).inv().expect("nonzero").value();
            TreeWord::b(tuple).conjugate_by_a_power(i as i64).pow(inv as i64)
        }
    }
}
