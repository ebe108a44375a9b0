use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::ReadFewError;
use crate::f2poly::{DependencyGraph, Distance, F2Poly, Var};

/// Indices of `S` pairwise at distance at least 4 in `G_p`, with their
/// strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadSelection {
    pub s: BTreeSet<Var>,
    pub chosen: Vec<Var>,
    /// `strata[j]` is the `t` with `chosen[j]` in `V_t(p)`.
    pub strata: Vec<usize>,
    /// Remaining occurring indices of `S` with a chosen index within
    /// distance 3, when there is one.
    pub leftovers: Vec<(Var, Option<Var>)>,
    /// Indices of `S` that do not occur in `p`. Any such index forces
    /// `f̂(S) = 0`.
    pub isolated: Vec<Var>,
}

impl SpreadSelection {
    pub fn ell(&self) -> usize {
        self.chosen.len()
    }

    /// Caller-supplied indices, validated against `p` and `S`.
    pub fn from_indices(p: &F2Poly, s: &BTreeSet<Var>, indices: &[Var]) -> Result<Self, ReadFewError> {
        let g = p.dependency_graph();
        let mut seen = BTreeSet::new();
        for &i in indices {
            if !s.contains(&i) {
                return Err(ReadFewError::NotInS(i));
            }
            if p.stratum_of(i).is_none() {
                return Err(ReadFewError::NotOccurring(i));
            }
            if !seen.insert(i) {
                return Err(ReadFewError::Duplicate(i));
            }
        }
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                if !g.distance(i, j).at_least(4) {
                    return Err(ReadFewError::TooClose { a: i, b: j });
                }
            }
        }
        Ok(Self::assemble(p, &g, s, indices.to_vec()))
    }

    fn assemble(p: &F2Poly, g: &DependencyGraph, s: &BTreeSet<Var>, chosen: Vec<Var>) -> Self {
        let strata = chosen.iter().map(|&i| p.stratum_of(i).expect("chosen indices occur")).collect();
        let occurring = p.occurring_vars();
        let mut leftovers = Vec::new();
        let mut isolated = Vec::new();
        for &i in s {
            if chosen.contains(&i) {
                continue;
            }
            if !occurring.contains(&i) {
                isolated.push(i);
                continue;
            }
            let witness = chosen.iter().copied().find(|&c| g.distance(i, c).at_most(3));
            leftovers.push((i, witness));
        }
        SpreadSelection { s: s.clone(), chosen, strata, leftovers, isolated }
    }

    /// Pairwise distance at least 4 among chosen indices; every greedy
    /// leftover has a witness.
    pub fn invariants_hold(&self, p: &F2Poly) -> bool {
        let g = p.dependency_graph();
        let spread = self.chosen.iter().enumerate().all(|(a, &i)| {
            self.chosen[a + 1..].iter().all(|&j| g.distance(i, j).at_least(4))
        });
        let witnessed = self.leftovers.iter().all(|&(i, w)| match w {
            Some(c) => g.distance(i, c).at_most(3),
            None => true,
        });
        spread && witnessed
    }
}

/// Greedy selection: scan `S` in increasing order and keep each occurring
/// index at distance at least 4 from everything kept so far.
pub fn select_spread_indices(p: &F2Poly, s: &BTreeSet<Var>) -> SpreadSelection {
    let g = p.dependency_graph();
    let occurring = p.occurring_vars();
    let mut chosen: Vec<Var> = Vec::new();
    for &i in s {
        if !occurring.contains(&i) {
            continue;
        }
        let dist = g.distances_from([i]);
        if chosen.iter().all(|&c| dist[c as usize - 1] >= Distance::Finite(4)) {
            chosen.push(i);
        }
    }
    SpreadSelection::assemble(p, &g, s, chosen)
}
