//! Finite permutation groups via stabilizer chains, with the subgroup
//! constructions needed for congruence quotients: normal closures,
//! commutator subgroups, derived and lower central series, level
//! stabilizers and power subgroups.
//!
//! Groups whose degree is `p^n` and whose generators respect the tree with
//! cyclic rotations use a chain indexed by tree vertices; all others use
//! deterministic Schreier–Sims.

mod perm;
mod schreier;
mod tree;

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use perm::Permutation;
use schreier::StabChain;
use tree::TreeChain;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Chain {
    Tree(TreeChain),
    General(StabChain),
}

#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Chain,
}

/// `(p, n)` with `degree = p^n`, `p` the smallest prime factor.
fn prime_power_shape(degree: usize) -> Option<(u32, usize)> {
    if degree < 2 {
        return None;
    }
    let p = (2..=degree).find(|q| degree.is_multiple_of(*q))?;
    let mut n = 0;
    let mut rest = degree;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p as u32, n))
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<()> {
    match gens.iter().find(|g| g.degree() != degree) {
        Some(g) => Err(Error::Usage(format!(
            "permutation of degree {} used in a group of degree {degree}",
            g.degree()
        ))),
        None => Ok(()),
    }
}

impl PermutationGroup {
    /// The group generated by `gens`. Picks the tree chain when the
    /// generators lie in the iterated wreath product on `p^n` points.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        check_degrees(degree, &gens)?;
        if let Some((p, n)) = prime_power_shape(degree) {
            let mut chain = TreeChain::new(p, n);
            if gens.iter().all(|g| chain.in_wreath(g)) {
                for g in &gens {
                    chain.insert(g.clone());
                }
                return Ok(PermutationGroup {
                    degree,
                    generators: gens,
                    chain: Chain::Tree(chain),
                });
            }
        }
        Self::general(degree, gens)
    }

    /// Forces the general Schreier–Sims chain with the natural base order.
    pub fn general(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::general_with_base_order(degree, gens, (0..degree as u32).collect())
    }

    /// General chain with base points chosen by priority in `base_order`.
    pub fn general_with_base_order(degree: usize, gens: Vec<Permutation>, base_order: Vec<u32>) -> Result<Self> {
        check_degrees(degree, &gens)?;
        let mut sorted = base_order.clone();
        sorted.sort_unstable();
        if sorted != (0..degree as u32).collect::<Vec<_>>() {
            return Err(Error::Usage("base order must list every point once".into()));
        }
        let chain = StabChain::new(degree, &gens, &[], base_order);
        Ok(PermutationGroup {
            degree,
            generators: gens,
            chain: Chain::General(chain),
        })
    }

    /// A group on the leaves of the depth-`n` p-ary tree.
    pub fn on_tree(p: u32, n: usize, gens: Vec<Permutation>) -> Result<Self> {
        let degree = (p as usize).pow(n as u32);
        let g = Self::new(degree, gens)?;
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators to check")
    }

    /// The trivial subgroup, using the same kind of chain.
    fn empty_like(&self) -> Self {
        let chain = match &self.chain {
            Chain::Tree(t) => Chain::Tree(TreeChain::new(t.p(), t.depth())),
            Chain::General(c) => Chain::General(StabChain::new(self.degree, &[], &[], (0..c.degree() as u32).collect())),
        };
        PermutationGroup {
            degree: self.degree,
            generators: Vec::new(),
            chain,
        }
    }

    /// A subgroup generated by elements already known to lie in `self`.
    fn subgroup_from(&self, gens: Vec<Permutation>) -> Self {
        let mut h = self.empty_like();
        for g in gens {
            h.insert(g);
        }
        h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn uses_tree_chain(&self) -> bool {
        matches!(self.chain, Chain::Tree(_))
    }

    /// `(p, n)` if the group is handled as a subgroup of the wreath product.
    pub fn tree_shape(&self) -> Option<(u32, usize)> {
        match &self.chain {
            Chain::Tree(t) => Some((t.p(), t.depth())),
            Chain::General(_) => None,
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        match &self.chain {
            Chain::Tree(t) => t.strong_generators(),
            Chain::General(c) => c.strong_generators().to_vec(),
        }
    }

    pub fn transversal_lengths(&self) -> Vec<usize> {
        match &self.chain {
            Chain::Tree(t) => t.transversal_lengths(),
            Chain::General(c) => c.transversal_lengths(),
        }
    }

    pub fn order(&self) -> BigUint {
        match &self.chain {
            Chain::Tree(t) => BigUint::from(t.p()).pow(t.log_order()),
            Chain::General(c) => c.order(),
        }
    }

    /// `log_p |G|`; fails unless the order is a power of `p`.
    pub fn log_order(&self, p: u32) -> Result<u32> {
        if let Chain::Tree(t) = &self.chain {
            if t.p() == p {
                return Ok(t.log_order());
            }
        }
        log_of_power(&self.order(), p)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::Usage(format!(
                "permutation of degree {} tested against a group of degree {}",
                g.degree(),
                self.degree
            )));
        }
        Ok(match &self.chain {
            Chain::Tree(t) => t.contains(g),
            Chain::General(c) => c.contains(g),
        })
    }

    /// Adds a generator; returns whether the group grew.
    fn insert(&mut self, g: Permutation) -> bool {
        let grew = match &mut self.chain {
            Chain::Tree(t) => {
                if !t.in_wreath(&g) {
                    let gens: Vec<Permutation> = self.generators.iter().cloned().chain([g]).collect();
                    *self = Self::general(self.degree, gens).expect("degrees checked");
                    return true;
                }
                t.insert(g.clone())
            }
            Chain::General(c) => c.insert(g.clone()),
        };
        if grew {
            self.generators.push(g);
        }
        grew
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as subgroups of a common symmetric group.
    pub fn same_group(&self, other: &PermutationGroup) -> Result<bool> {
        Ok(self.order() == other.order() && self.is_subgroup_of(other)?)
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }
}

/// `log_p n`, or an error if `n` is not a power of `p`.
pub fn log_of_power(n: &BigUint, p: u32) -> Result<u32> {
    let pb = BigUint::from(p);
    let mut rest = n.clone();
    let mut k = 0;
    if rest.is_zero() {
        return Err(Error::NotPrimePower { value: "0".into(), p });
    }
    while !rest.is_one() {
        if !(&rest % &pb).is_zero() {
            return Err(Error::NotPrimePower { value: n.to_string(), p });
        }
        rest /= &pb;
        k += 1;
    }
    Ok(k)
}

pub fn group_order(g: &PermutationGroup) -> BigUint {
    g.order()
}

pub fn contains(g: &PermutationGroup, x: &Permutation) -> Result<bool> {
    g.contains(x)
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermutationGroup, s: &[Permutation]) -> Result<PermutationGroup> {
    for x in s {
        if !g.contains(x)? {
            return Err(Error::Usage("normal closure of an element outside the group".into()));
        }
    }
    Ok(normal_closure_unchecked(g, s.to_vec()))
}

fn normal_closure_unchecked(g: &PermutationGroup, s: Vec<Permutation>) -> PermutationGroup {
    let mut n = g.empty_like();
    let mut conjugators: Vec<Permutation> = g.generators.clone();
    conjugators.extend(g.generators.iter().map(Permutation::inverse));
    let mut queue: VecDeque<Permutation> = s.into();
    while let Some(x) = queue.pop_front() {
        if x.is_identity() {
            continue;
        }
        if n.insert(x.clone()) {
            queue.extend(conjugators.iter().map(|c| x.conjugate(c)));
        }
    }
    n
}

/// `[H, K]` for subgroups normal in `ambient`.
pub fn commutator_subgroup(h: &PermutationGroup, k: &PermutationGroup, ambient: &PermutationGroup) -> PermutationGroup {
    let mut comms = Vec::new();
    for x in &h.generators {
        for y in &k.generators {
            let c = x.commutator(y);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_unchecked(ambient, comms)
}

/// `[G⁽⁰⁾, G⁽¹⁾, …]` up to `G⁽ⁿ_max⁾`, stopping early once it stabilizes.
pub fn derived_series(g: &PermutationGroup, n_max: usize) -> Vec<PermutationGroup> {
    let mut series = vec![g.clone()];
    for _ in 0..n_max {
        let last = series.last().expect("nonempty");
        let next = commutator_subgroup(last, last, g);
        let stable = next.order() == last.order();
        series.push(next);
        if stable {
            break;
        }
    }
    series
}

/// `γ_k(G)`, with `γ_1 = G` and `γ_{k+1} = [γ_k, G]`.
pub fn lower_central(g: &PermutationGroup, k: usize) -> Result<PermutationGroup> {
    if k < 2 {
        return Err(Error::Usage("lower central terms start at k = 2".into()));
    }
    let mut term = g.clone();
    for _ in 1..k {
        term = commutator_subgroup(&term, g, g);
    }
    Ok(term)
}

/// Kernel of the action of `g` on level `k` of the depth-`n_total` tree.
pub fn level_stabilizer(g: &PermutationGroup, n_total: usize, k: usize) -> Result<PermutationGroup> {
    if k > n_total {
        return Err(Error::Usage(format!("level {k} exceeds tree depth {n_total}")));
    }
    if k == 0 {
        return Ok(g.clone());
    }
    if let Chain::Tree(t) = &g.chain {
        if t.depth() != n_total {
            return Err(Error::Usage(format!("group acts on level {}, not {n_total}", t.depth())));
        }
        let kernel = t.level_kernel(k);
        return Ok(PermutationGroup {
            degree: g.degree,
            generators: kernel.strong_generators(),
            chain: Chain::Tree(kernel),
        });
    }
    let p = (g.degree as f64).powf(1.0 / n_total as f64).round() as usize;
    if p.checked_pow(n_total as u32) != Some(g.degree) {
        return Err(Error::Usage(format!("degree {} is not an {n_total}-th power", g.degree)));
    }
    // Extend each generator to the level-k vertices, base those first and
    // read off their pointwise stabilizer.
    let width = p.pow(k as u32);
    let block = g.degree / width;
    let mut extended = Vec::with_capacity(g.generators.len());
    for x in &g.generators {
        let mut images: Vec<u32> = Vec::with_capacity(width + g.degree);
        for v in 0..width {
            let target = x.apply((v * block) as u32) as usize / block;
            let consistent = (0..block).all(|i| x.apply((v * block + i) as u32) as usize / block == target);
            if !consistent {
                return Err(Error::Usage("group does not preserve the level structure".into()));
            }
            images.push(target as u32);
        }
        images.extend(x.images().iter().map(|&y| y + width as u32));
        extended.push(Permutation::from_images_unchecked(images));
    }
    let total = width + g.degree;
    let prefix: Vec<u32> = (0..width as u32).collect();
    let chain = StabChain::new(total, &extended, &prefix, (0..total as u32).collect());
    let gens: Vec<Permutation> = chain
        .stabilizer_generators(prefix.len())
        .into_iter()
        .map(|s| Permutation::from_images_unchecked(s.images()[width..].iter().map(|&y| y - width as u32).collect()))
        .collect();
    debug_assert!(chain.base().len() >= prefix.len());
    Ok(g.subgroup_from(gens))
}

/// `⟨N, h^p : h ∈ gens(H)⟩`, equal to `N·H^p` when `H/N` is abelian.
pub fn power_subgroup_mod(h: &PermutationGroup, n: &PermutationGroup, p: u32) -> Result<PermutationGroup> {
    for x in &h.generators {
        for y in &h.generators {
            if !n.contains(&x.commutator(y))? {
                return Err(Error::Precondition("H/N is not abelian".into()));
            }
        }
    }
    let gens: Vec<Permutation> = n
        .generators
        .iter()
        .cloned()
        .chain(h.generators.iter().map(|x| x.pow(p as i64)))
        .collect();
    Ok(h.subgroup_from(gens))
}

/// `|G : H|` for `H ≤ G`.
pub fn subgroup_index(g: &PermutationGroup, h: &PermutationGroup) -> Result<BigUint> {
    if !h.is_subgroup_of(g)? {
        return Err(Error::Usage("subgroup_index needs H ≤ G".into()));
    }
    Ok(g.order() / h.order())
}

/// `log_p |G : H|`.
pub fn log_index(g: &PermutationGroup, h: &PermutationGroup, p: u32) -> Result<u32> {
    if !h.is_subgroup_of(g)? {
        return Err(Error::Usage("log_index needs H ≤ G".into()));
    }
    Ok(g.log_order(p)? - h.log_order(p)?)
}

/// The component of `g` below first-level vertex `x`, as a permutation of
/// that subtree's leaves. `g` must map the subtree to itself.
pub fn restrict_to_subtree(g: &Permutation, x: u32, p: u32) -> Result<Permutation> {
    let block = g.degree() / p as usize;
    let start = x as usize * block;
    let images: Option<Vec<u32>> = (0..block)
        .map(|i| {
            let y = g.apply((start + i) as u32) as usize;
            (start..start + block).contains(&y).then(|| (y - start) as u32)
        })
        .collect();
    images
        .map(Permutation::from_images_unchecked)
        .ok_or_else(|| Error::Precondition(format!("element does not fix the first-level vertex {x}")))
}

/// Places `h` below first-level vertex `x` of a tree with `p` subtrees.
pub fn embed_in_subtree(h: &Permutation, x: u32, p: u32) -> Permutation {
    let block = h.degree();
    let start = x as usize * block;
    let images = (0..block * p as usize)
        .map(|i| {
            if (start..start + block).contains(&i) {
                (start + h.apply((i - start) as u32) as usize) as u32
            } else {
                i as u32
            }
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `K × … × K` (p copies) acting on the p subtrees below the root.
pub fn subtree_product(k: &PermutationGroup, p: u32) -> Result<PermutationGroup> {
    let gens: Vec<Permutation> = (0..p)
        .flat_map(|x| k.strong_generators().into_iter().map(move |h| embed_in_subtree(&h, x, p)))
        .collect();
    PermutationGroup::new(k.degree * p as usize, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Right regular action of the Heisenberg group over F_3 on itself.
    fn heisenberg() -> PermutationGroup {
        let idx = |x: u32, y: u32, z: u32| x * 9 + y * 3 + z;
        let mul = |(x, y, z): (u32, u32, u32), (u, v, w): (u32, u32, u32)| ((x + u) % 3, (y + v) % 3, (z + w + x * v) % 3);
        let gen = |g: (u32, u32, u32)| {
            let mut images = vec![0u32; 27];
            for x in 0..3 {
                for y in 0..3 {
                    for z in 0..3 {
                        let (a, b, c) = mul((x, y, z), g);
                        images[idx(x, y, z) as usize] = idx(a, b, c);
                    }
                }
            }
            Permutation::from_images(images).unwrap()
        };
        PermutationGroup::new(27, vec![gen((1, 0, 0)), gen((0, 1, 0))]).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(PermutationGroup::trivial(4).order(), BigUint::one());
        let c3 = PermutationGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(c3.order(), BigUint::from(3u32));
        assert!(c3.contains(&Permutation::identity(3)).unwrap());
        assert!(!c3.contains(&Permutation::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap());
        assert!(c3.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn heisenberg_series() {
        let h = heisenberg();
        assert_eq!(h.order(), BigUint::from(27u32));
        let d = derived_series(&h, 3);
        let logs: Vec<u32> = d.iter().map(|x| log_index(&h, x, 3).unwrap()).collect();
        assert_eq!(&logs[..3], &[0, 2, 3]);
        assert!(lower_central(&h, 3).unwrap().is_trivial());
        assert!(lower_central(&h, 1).is_err());
    }

    #[test]
    fn general_chain_agrees_with_tree_chain() {
        let h = heisenberg();
        let g = PermutationGroup::general(27, h.generators().to_vec()).unwrap();
        assert_eq!(g.order(), h.order());
        let dg = derived_series(&g, 2);
        assert_eq!(dg[1].order(), BigUint::from(3u32));
    }

    #[test]
    fn abelian_cases() {
        let c = PermutationGroup::new(9, vec![Permutation::from_cycles(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]).unwrap()])
            .unwrap();
        assert!(commutator_subgroup(&c, &c, &c).is_trivial());
        let triv = PermutationGroup::trivial(9);
        assert!(commutator_subgroup(&c, &triv, &c).is_trivial());
        // Cyclic of order p^2: the p-th powers form the order-p subgroup.
        let pw = power_subgroup_mod(&c, &triv, 3).unwrap();
        assert_eq!(pw.order(), BigUint::from(3u32));
        assert!(pw.is_subgroup_of(&c).unwrap());
    }

    #[test]
    fn power_subgroup_precondition() {
        let s3 = PermutationGroup::general(
            3,
            vec![
                Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let triv = PermutationGroup::trivial(3);
        assert!(matches!(power_subgroup_mod(&s3, &triv, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn normal_closure_in_s4() {
        let s4 = PermutationGroup::general(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let v4 = normal_closure(&s4, &[Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]).unwrap();
        assert_eq!(v4.order(), BigUint::from(4u32));
        assert_eq!(derived_series(&s4, 3).iter().map(|x| x.order()).collect::<Vec<_>>().len(), 4);
        let outside = Permutation::from_cycles(5, &[&[0, 4]]).unwrap();
        assert!(normal_closure(&s4, &[outside]).is_err());
    }

    #[test]
    fn general_level_stabilizer() {
        // C_3 wr C_3 on 9 points with a general chain.
        let a = Permutation::from_images(vec![3, 4, 5, 6, 7, 8, 0, 1, 2]).unwrap();
        let r = Permutation::from_cycles(9, &[&[0, 1, 2]]).unwrap();
        let g = PermutationGroup::general(9, vec![a.clone(), r.clone()]).unwrap();
        let t = PermutationGroup::new(9, vec![a, r]).unwrap();
        assert!(t.uses_tree_chain());
        for k in 0..=2 {
            let sg = level_stabilizer(&g, 2, k).unwrap();
            let st = level_stabilizer(&t, 2, k).unwrap();
            assert_eq!(sg.order(), st.order());
            assert!(sg.same_group(&st).unwrap());
        }
        assert!(level_stabilizer(&t, 2, 3).is_err());
    }

    #[test]
    fn subtree_restriction_round_trip() {
        let h = Permutation::from_cycles(9, &[&[0, 4, 8]]).unwrap();
        for x in 0..3 {
            let g = embed_in_subtree(&h, x, 3);
            assert_eq!(restrict_to_subtree(&g, x, 3).unwrap(), h);
        }
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert!(restrict_to_subtree(&a, 0, 3).is_err());
    }

    #[test]
    fn log_of_non_power_is_an_error() {
        assert!(log_of_power(&BigUint::from(12u32), 3).is_err());
        assert_eq!(log_of_power(&BigUint::from(81u32), 3).unwrap(), 4);
    }
}
