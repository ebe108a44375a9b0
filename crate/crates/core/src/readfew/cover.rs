use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::f2poly::{F2Poly, Monomial, Var};

/// A picked degree-`t` monomial with its halo `N_{=1}(S_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverBlock {
    pub monomial: Monomial,
    pub halo: BTreeSet<Var>,
}

/// Variable-disjoint degree-`t` monomials harvested greedily from `V_t(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyCover {
    pub t: usize,
    pub blocks: Vec<CoverBlock>,
    /// `|V_t(q)|`.
    pub stratum_size: usize,
    /// Variables outside every `S_i ∪ T_i`.
    pub remaining: BTreeSet<Var>,
}

impl GreedyCover {
    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    /// `ℓ >= |V_t| / (t (Δd)^3)`, compared exactly.
    pub fn count_bound_holds(&self, delta: usize, d: usize) -> bool {
        let dd = (delta * d) as u128;
        (self.ell() as u128) * (self.t as u128) * dd * dd * dd >= self.stratum_size as u128
    }

    /// The sets `S_i ∪ T_i` are pairwise at distance at least 2.
    pub fn separation_holds(&self, q: &F2Poly) -> bool {
        let g = q.dependency_graph();
        let sets: Vec<BTreeSet<Var>> = self
            .blocks
            .iter()
            .map(|b| b.monomial.vars().iter().copied().chain(b.halo.iter().copied()).collect())
            .collect();
        sets.iter().enumerate().all(|(a, x)| sets[a + 1..].iter().all(|y| g.set_distance(x, y).at_least(2)))
    }
}

/// Greedy cover at stratum `t`.
///
/// Scans `W ∩ V_t(q)` in increasing index order, picks the first degree-`t`
/// monomial (in canonical order) containing the variable, and removes
/// `N_{<=4}(S_i)` from `W`. The radius 4 keeps the halos of different
/// picks non-adjacent.
pub fn greedy_disjoint_cover(q: &F2Poly, t: usize) -> GreedyCover {
    let g = q.dependency_graph();
    let stratum: BTreeSet<Var> = q.variable_strata().remove(&t).unwrap_or_default();
    let mut alive: BTreeSet<Var> = (1..=q.n()).collect();
    let mut blocks = Vec::new();
    let mut covered = BTreeSet::new();
    for &v in &stratum {
        if !alive.contains(&v) {
            continue;
        }
        let monomial = q
            .monomials()
            .find(|m| m.degree() == t && m.contains(v))
            .expect("a stratum-t variable lies in a degree-t monomial")
            .clone();
        let halo = g.sphere(monomial.vars().iter().copied(), 1);
        for x in g.ball(monomial.vars().iter().copied(), 4) {
            alive.remove(&x);
        }
        covered.extend(monomial.vars().iter().copied());
        covered.extend(halo.iter().copied());
        blocks.push(CoverBlock { monomial, halo });
    }
    let remaining = (1..=q.n()).filter(|v| !covered.contains(v)).collect();
    GreedyCover { t, blocks, stratum_size: stratum.len(), remaining }
}
