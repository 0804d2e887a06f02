//! Stabilizer chains for subgroups of the iterated wreath product
//! `C_p ≀ … ≀ C_p` acting on the `p^n` leaves of a depth-`n` tree.
//!
//! The base is the list of interior vertices, level by level and
//! lexicographically within a level. An element is recorded by its
//! portrait: the rotation it applies below each vertex. Stabilizing the
//! vertices before position `j` leaves a group acting on the children of
//! vertex `j` by a cyclic group of order 1 or p, so each chain step stores
//! a single element with label 1 together with its powers.

use super::perm::Permutation;
use crate::fplinalg::inv_mod;

#[derive(Clone, Debug)]
pub(crate) struct TreeChain {
    p: u32,
    depth: usize,
    /// Per base position: the leaf below the vertex along the 0-branch
    /// and the place value of the digit just below the vertex.
    probes: Vec<(u32, u32)>,
    level_offsets: Vec<usize>,
    /// `table[j]` holds `h, h², …, h^{p−1}` for the element with label 1 at
    /// position `j` and label 0 before it.
    table: Vec<Option<Vec<Permutation>>>,
    size: usize,
}

impl TreeChain {
    pub(crate) fn new(p: u32, depth: usize) -> Self {
        let pu = p as usize;
        let mut level_offsets = vec![0usize];
        let mut probes = Vec::new();
        for k in 0..depth {
            let width = pu.pow(k as u32);
            let below = pu.pow((depth - k) as u32);
            let place = pu.pow((depth - k - 1) as u32) as u32;
            for v in 0..width {
                probes.push(((v * below) as u32, place));
            }
            level_offsets.push(level_offsets[k] + width);
        }
        TreeChain {
            p,
            depth,
            table: vec![None; probes.len()],
            probes,
            level_offsets,
            size: 0,
        }
    }

    pub(crate) fn p(&self) -> u32 {
        self.p
    }

    pub(crate) fn depth(&self) -> usize {
        self.depth
    }

    pub(crate) fn degree(&self) -> usize {
        (self.p as usize).pow(self.depth as u32)
    }

    /// `log_p` of the group order.
    pub(crate) fn log_order(&self) -> u32 {
        self.size as u32
    }

    #[inline]
    fn label(&self, g: &Permutation, j: usize) -> u32 {
        let (leaf, place) = self.probes[j];
        (g.apply(leaf) / place) % self.p
    }

    /// Whether `g` preserves the tree structure with cyclic rotations at
    /// every vertex.
    pub(crate) fn in_wreath(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree() {
            return false;
        }
        let labels: Vec<u32> = (0..self.probes.len()).map(|j| self.label(g, j)).collect();
        let p = self.p;
        (0..self.degree() as u32).all(|leaf| {
            let mut digits = Vec::with_capacity(self.depth);
            let mut x = leaf;
            for _ in 0..self.depth {
                digits.push(x % p);
                x /= p;
            }
            digits.reverse();
            let mut prefix = 0usize;
            let mut image = 0u32;
            for (k, &d) in digits.iter().enumerate() {
                let r = labels[self.level_offsets[k] + prefix];
                image = image * p + (d + r) % p;
                prefix = prefix * p as usize + d as usize;
            }
            image == g.apply(leaf)
        })
    }

    /// Reduces `g` by the stored elements. Returns the residue with its
    /// first nonzero position and label, or `None` if `g` is in the group.
    fn sift(&self, mut g: Permutation) -> Option<(Permutation, usize, u32)> {
        for j in 0..self.probes.len() {
            let l = self.label(&g, j);
            if l == 0 {
                continue;
            }
            match &self.table[j] {
                Some(powers) => g = g.mul(&powers[(self.p - l) as usize - 1]),
                None => return Some((g, j, l)),
            }
        }
        debug_assert!(g.is_identity());
        None
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        self.in_wreath(g) && self.sift(g.clone()).is_none()
    }

    /// Adds `g`, which must lie in the wreath product, and closes the table
    /// under p-th powers and commutators. Returns whether the group grew.
    pub(crate) fn insert(&mut self, g: Permutation) -> bool {
        debug_assert!(self.in_wreath(&g));
        let mut grew = false;
        let mut queue = vec![g];
        while let Some(x) = queue.pop() {
            let Some((res, j, l)) = self.sift(x) else {
                continue;
            };
            let inv = inv_mod(l, self.p).expect("label is a unit");
            let h = res.pow(inv as i64);
            let mut powers = vec![h.clone()];
            for _ in 2..self.p {
                let next = powers.last().expect("nonempty").mul(&h);
                powers.push(next);
            }
            queue.push(powers.last().expect("nonempty").mul(&h));
            for t in self.table.iter().flatten() {
                queue.push(h.commutator(&t[0]));
            }
            self.table[j] = Some(powers);
            self.size += 1;
            grew = true;
        }
        grew
    }

    /// The subgroup of elements with trivial labels on levels below `k`,
    /// i.e. the kernel of the action on level `k`.
    pub(crate) fn level_kernel(&self, k: usize) -> TreeChain {
        let start = self.level_offsets[k.min(self.depth)];
        let mut sub = self.clone();
        for slot in sub.table.iter_mut().take(start) {
            *slot = None;
        }
        sub.size = sub.table.iter().flatten().count();
        sub
    }

    /// One element per nontrivial chain step; together they generate the
    /// group.
    pub(crate) fn strong_generators(&self) -> Vec<Permutation> {
        self.table.iter().flatten().map(|t| t[0].clone()).collect()
    }

    pub(crate) fn transversal_lengths(&self) -> Vec<usize> {
        self.table
            .iter()
            .map(|t| if t.is_some() { self.p as usize } else { 1 })
            .collect()
    }
}
