//! Closed-form index formulas and the ledger of lattice indices near the
//! top of the group. All values are logarithms base p.

use num_bigint::BigUint;
use serde::Serialize;

use crate::circulant::stab_rank_t;
use crate::error::{Error, Result};
use crate::tuples::{classify, DefiningTuple, TupleClass};

fn overflow() -> Error {
    Error::Usage("index logarithm exceeds 64 bits".into())
}

fn pow_u64(p: u32, k: u32) -> Result<u64> {
    (p as u64).checked_pow(k).ok_or_else(overflow)
}

/// `(p^m − 1)/(p − 1) = 1 + p + … + p^{m−1}`, exactly.
fn geometric(p: u32, m: u32) -> Result<u64> {
    (0..m).try_fold(0u64, |acc, i| acc.checked_add(pow_u64(p, i)?).ok_or_else(overflow))
}

fn require_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Usage("series index n must be at least 1".into()));
    }
    Ok(())
}

/// `log_p |G : G⁽ⁿ⁾|`.
pub fn derived_index_log(e: &DefiningTuple, n: u32) -> Result<u64> {
    require_positive(n)?;
    if n == 1 {
        return Ok(2);
    }
    let p = e.p();
    let c = classify(e);
    let lead = pow_u64(p, n - 2)?
        .checked_mul((p + c.con_eprime + c.sym_esecond) as u64)
        .ok_or_else(overflow)?;
    let tail = geometric(p, n - 1)?
        .checked_mul(c.sym_e as u64)
        .ok_or_else(overflow)?;
    Ok(lead - tail + 1)
}

/// `log_p |G : G″| = p + 1 + con(e′) + sym(e″) − sym(e)`.
pub fn second_derived_index_log(e: &DefiningTuple) -> u64 {
    let c = classify(e);
    (e.p() + 1 + c.con_eprime + c.sym_esecond - c.sym_e) as u64
}

/// `log_p |G : Stab_G(n)|`: 1 for n = 1 and
/// `t·p^{n−2} − (p^{n−2} − 1)/(p − 1)·sym(e) + 1` for n ≥ 2.
pub fn stabilizer_index_log(e: &DefiningTuple, n: u32) -> Result<u64> {
    require_positive(n)?;
    if n == 1 {
        return Ok(1);
    }
    let p = e.p();
    let t = stab_rank_t(e)? as u64;
    let sym = classify(e).sym_e as u64;
    let lead = t.checked_mul(pow_u64(p, n - 2)?).ok_or_else(overflow)?;
    let tail = geometric(p, n - 2)?.checked_mul(sym).ok_or_else(overflow)?;
    Ok(lead - tail + 1)
}

/// `p^k` as an exact integer.
pub fn exact_power(p: u32, k: u64) -> BigUint {
    BigUint::from(p).pow(k as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeVerdict {
    Match,
    Mismatch,
    FormulaOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// Inclusion inside G.
    Chain,
    /// Inclusion inside the product `G × … × G` of first-level sections.
    Product,
    /// Between a subgroup of G, identified with its section tuple, and a
    /// subgroup of the product.
    Cross,
}

/// One edge of the lattice: `to ≤ from` with `log_p |from : to| = predicted`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeEdge {
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
    pub predicted: u64,
    pub brute_force: Option<u64>,
    pub verdict: EdgeVerdict,
}

impl LatticeEdge {
    fn new(from: &str, to: &str, kind: EdgeKind, predicted: u64) -> Self {
        LatticeEdge {
            from: from.into(),
            to: to.into(),
            kind,
            predicted,
            brute_force: None,
            verdict: EdgeVerdict::FormulaOnly,
        }
    }

    pub fn record(&mut self, computed: u64) {
        self.brute_force = Some(computed);
        self.verdict = if computed == self.predicted {
            EdgeVerdict::Match
        } else {
            EdgeVerdict::Mismatch
        };
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub p: u32,
    pub e: Vec<u32>,
    pub t: usize,
    pub class_bits: TupleClass,
    pub derived_logs: Vec<(u32, u64)>,
    pub stabilizer_logs: Vec<(u32, u64)>,
    pub lattice_edges: Vec<LatticeEdge>,
}

impl IndexReport {
    pub fn edge_mut(&mut self, from: &str, to: &str) -> Option<&mut LatticeEdge> {
        self.lattice_edges.iter_mut().find(|x| x.from == from && x.to == to)
    }

    pub fn all_match(&self) -> bool {
        self.lattice_edges.iter().all(|x| x.verdict != EdgeVerdict::Mismatch)
    }
}

/// Vertex names used in lattice edges.
pub mod vertex {
    pub const G: &str = "G";
    pub const STAB1: &str = "Stab(1)";
    pub const DERIVED: &str = "G'";
    pub const GAMMA3: &str = "gamma3(G)";
    pub const STAB2: &str = "Stab(2)";
    pub const STAB1_DERIVED: &str = "Stab(1)'";
    pub const SECOND_DERIVED: &str = "G''";
    pub const GAMMA3_STAB1: &str = "gamma3(Stab(1))";
    pub const STAB3: &str = "Stab(3)";
    pub const G_P: &str = "G^p";
    pub const STAB1_P: &str = "Stab(1)^p";
    pub const DERIVED_P: &str = "G'^p";
    pub const GAMMA3_P: &str = "gamma3(G)^p";
    pub const STAB2_P: &str = "Stab(2)^p";
}

/// Formula values for the derived series and level stabilizers up to
/// `n = 4`, and every lattice edge.
///
/// Cross edges identify a subgroup of `Stab(1)` with its tuple of sections.
/// The edge `Stab(1) → G^p` measures the image of `Stab(1)` modulo
/// `Stab(1)^p`, i.e. `|G^p : ψ(Stab(1))·Stab(1)^p|`.
pub fn lattice_report(e: &DefiningTuple) -> Result<IndexReport> {
    use vertex::*;
    use EdgeKind::*;
    let p = e.p() as u64;
    let t = stab_rank_t(e)?;
    let tt = t as u64;
    let c = classify(e);
    let (con, sym2, sym) = (c.con_eprime as u64, c.sym_esecond as u64, c.sym_e as u64);
    let edges = vec![
        LatticeEdge::new(G, STAB1, Chain, 1),
        LatticeEdge::new(STAB1, DERIVED, Chain, 1),
        LatticeEdge::new(DERIVED, GAMMA3, Chain, 1),
        LatticeEdge::new(GAMMA3, STAB2, Chain, tt - 2),
        LatticeEdge::new(STAB2, STAB1_DERIVED, Chain, p - tt),
        LatticeEdge::new(STAB1_DERIVED, SECOND_DERIVED, Chain, con + sym2 - sym),
        LatticeEdge::new(SECOND_DERIVED, GAMMA3_STAB1, Chain, p - con - sym2),
        LatticeEdge::new(GAMMA3_STAB1, STAB3, Chain, p * (tt - 2)),
        LatticeEdge::new(G_P, STAB1_P, Product, p),
        LatticeEdge::new(STAB1_P, DERIVED_P, Product, p),
        LatticeEdge::new(DERIVED_P, GAMMA3_P, Product, p),
        LatticeEdge::new(GAMMA3_P, STAB2_P, Product, p * (tt - 2)),
        LatticeEdge::new(G_P, STAB1, Cross, p - tt),
        LatticeEdge::new(STAB1_P, STAB2, Cross, tt + sym),
        LatticeEdge::new(DERIVED_P, STAB1_DERIVED, Cross, sym),
        LatticeEdge::new(GAMMA3_P, GAMMA3_STAB1, Cross, 0),
        LatticeEdge::new(STAB2_P, STAB3, Cross, 0),
    ];
    let derived_logs = (1..=4).map(|n| Ok((n, derived_index_log(e, n)?))).collect::<Result<_>>()?;
    let stabilizer_logs = (1..=4).map(|n| Ok((n, stabilizer_index_log(e, n)?))).collect::<Result<_>>()?;
    Ok(IndexReport {
        p: e.p(),
        e: e.entries().to_vec(),
        t,
        class_bits: c,
        derived_logs,
        stabilizer_logs,
        lattice_edges: edges,
    })
}
