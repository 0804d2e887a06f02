//! Deterministic Schreier–Sims for arbitrary permutation groups.

use num_bigint::BigUint;

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    /// Indices into `StabChain::strong` of the generators fixing all
    /// earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    /// Priority order used to choose new base points.
    base_order: Vec<u32>,
    base: Vec<u32>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a complete chain. `prefix` seeds the base (points may be
    /// redundant); further base points are the first points of
    /// `base_order` moved by the element that needs them.
    pub(crate) fn new(degree: usize, gens: &[Permutation], prefix: &[u32], base_order: Vec<u32>) -> Self {
        debug_assert_eq!(base_order.len(), degree);
        let mut chain = StabChain {
            degree,
            base_order,
            base: prefix.to_vec(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            chain.push_strong(g.clone());
        }
        chain.complete();
        chain
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn base(&self) -> &[u32] {
        &self.base
    }

    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn transversal_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        let (res, _) = self.sift(g.clone(), 0);
        res.is_identity()
    }

    /// Adds `g` to the group; returns whether the group grew.
    pub(crate) fn insert(&mut self, g: Permutation) -> bool {
        if self.contains(&g) {
            return false;
        }
        self.push_strong(g);
        self.complete();
        true
    }

    /// Strong generators fixing the first `k` base points; they generate
    /// the pointwise stabilizer of those points.
    pub(crate) fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        let fixed = &self.base[..k.min(self.base.len())];
        self.strong
            .iter()
            .filter(|s| fixed.iter().all(|&b| s.apply(b) == b))
            .cloned()
            .collect()
    }

    fn push_strong(&mut self, g: Permutation) {
        if self.base.iter().all(|&b| g.apply(b) == b) {
            let point = self
                .base_order
                .iter()
                .copied()
                .find(|&x| g.apply(x) != x)
                .expect("non-identity permutation moves a point");
            self.base.push(point);
        }
        self.strong.push(g);
    }

    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(self.base[l]);
            match &level.inverse[beta as usize] {
                Some(u_inv) => g = g.mul(u_inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn build_level(&self, l: usize) -> Level {
        let fixed = &self.base[..l];
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&i| fixed.iter().all(|&b| self.strong[i].apply(b) == b))
            .collect();
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        let root = self.base[l];
        transversal[root as usize] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![root];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &i in &gens {
                let s = &self.strong[i];
                let y = s.apply(x);
                if transversal[y as usize].is_none() {
                    let u = transversal[x as usize].as_ref().expect("orbit point").mul(s);
                    transversal[y as usize] = Some(u);
                    orbit.push(y);
                }
            }
        }
        let inverse = transversal.iter().map(|t| t.as_ref().map(Permutation::inverse)).collect();
        Level {
            gens,
            orbit,
            transversal,
            inverse,
        }
    }

    /// Schreier–Sims main loop: every Schreier generator of every level
    /// must sift through the levels below it.
    fn complete(&mut self) {
        self.levels = (0..self.base.len()).map(|l| self.build_level(l)).collect();
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            match self.find_failing_schreier_generator(l) {
                Some((res, j)) => {
                    self.push_strong(res);
                    while self.levels.len() < self.base.len() {
                        self.levels.push(self.build_level(self.levels.len()));
                    }
                    for m in (l + 1)..=j.min(self.base.len() - 1) {
                        self.levels[m] = self.build_level(m);
                    }
                    i = j.min(self.base.len() - 1) + 1;
                }
                None => i -= 1,
            }
        }
    }

    fn find_failing_schreier_generator(&self, l: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[l];
        for &beta in &level.orbit {
            let u = level.transversal[beta as usize].as_ref().expect("orbit point");
            for &i in &level.gens {
                let s = &self.strong[i];
                let gamma = s.apply(beta);
                let h = u.mul(s).mul(level.inverse[gamma as usize].as_ref().expect("orbit point"));
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift(h, l + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }
}
