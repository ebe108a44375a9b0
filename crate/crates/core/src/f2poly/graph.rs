use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{F2Poly, Var};

/// Shortest-path distance in a [`DependencyGraph`]. `Infinite` sorts after
/// every finite distance, so it satisfies any "at least" threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn at_least(self, d: usize) -> bool {
        match self {
            Distance::Finite(x) => x >= d,
            Distance::Infinite => true,
        }
    }

    pub fn at_most(self, d: usize) -> bool {
        matches!(self, Distance::Finite(x) if x <= d)
    }
}

/// Co-occurrence graph `G_p` on `1..=n`: `i ~ j` iff some monomial contains
/// both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    adj: Vec<BTreeSet<Var>>,
}

impl DependencyGraph {
    pub fn build(p: &F2Poly) -> Self {
        let mut adj = vec![BTreeSet::new(); p.n() as usize];
        for m in p.monomials() {
            let vs = m.vars();
            for (a, &i) in vs.iter().enumerate() {
                for &j in &vs[a + 1..] {
                    adj[i as usize - 1].insert(j);
                    adj[j as usize - 1].insert(i);
                }
            }
        }
        DependencyGraph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Var) -> &BTreeSet<Var> {
        &self.adj[v as usize - 1]
    }

    pub fn degree(&self, v: Var) -> usize {
        self.adj[v as usize - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn adjacent(&self, i: Var, j: Var) -> bool {
        self.adj[i as usize - 1].contains(&j)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Var, Var)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, nb)| {
            let i = i as Var + 1;
            nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j))
        })
    }

    /// Multi-source BFS. `out[v - 1]` is the distance from `v` to `sources`.
    pub fn distances_from(&self, sources: impl IntoIterator<Item = Var>) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s as usize - 1] == Distance::Infinite {
                dist[s as usize - 1] = Distance::Finite(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let Distance::Finite(d) = dist[v as usize - 1] else { unreachable!() };
            for &w in self.neighbors(v) {
                if dist[w as usize - 1] == Distance::Infinite {
                    dist[w as usize - 1] = Distance::Finite(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, i: Var, j: Var) -> Distance {
        self.distances_from([i])[j as usize - 1]
    }

    /// Distance between two vertex sets (minimum over pairs).
    pub fn set_distance(&self, a: &BTreeSet<Var>, b: &BTreeSet<Var>) -> Distance {
        let d = self.distances_from(a.iter().copied());
        b.iter().map(|&v| d[v as usize - 1]).min().unwrap_or(Distance::Infinite)
    }

    /// `N_{<=d}(S)`: vertices within distance `d` of `S`.
    pub fn ball(&self, s: impl IntoIterator<Item = Var>, d: usize) -> BTreeSet<Var> {
        self.collect_where(s, |x| x <= d)
    }

    /// `N_{=d}(S)`: vertices at distance exactly `d` from `S`.
    pub fn sphere(&self, s: impl IntoIterator<Item = Var>, d: usize) -> BTreeSet<Var> {
        self.collect_where(s, |x| x == d)
    }

    fn collect_where(
        &self,
        s: impl IntoIterator<Item = Var>,
        keep: impl Fn(usize) -> bool,
    ) -> BTreeSet<Var> {
        self.distances_from(s)
            .into_iter()
            .enumerate()
            .filter_map(|(i, d)| match d {
                Distance::Finite(x) if keep(x) => Some(i as Var + 1),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::{parse_poly, random_read_delta_poly};

    fn set(v: &[Var]) -> BTreeSet<Var> {
        v.iter().copied().collect()
    }

    #[test]
    fn chain() {
        let g = parse_poly("x1*x2 + x2*x3").unwrap().dependency_graph();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, [(1, 2), (2, 3)]);
        assert_eq!(g.distance(1, 3), Distance::Finite(2));
        assert_eq!(g.distance(2, 2), Distance::Finite(0));
    }

    #[test]
    fn disconnected() {
        let g = parse_poly("x1*x2 + x3*x4").unwrap().dependency_graph();
        assert_eq!(g.distance(1, 3), Distance::Infinite);
        assert!(g.distance(1, 3).at_least(4));
        assert!(!g.distance(1, 3).at_most(100));
    }

    #[test]
    fn triangle() {
        let g = parse_poly("x1*x2*x3").unwrap().dependency_graph();
        assert_eq!(g.ball([1], 1), set(&[1, 2, 3]));
        assert_eq!(g.sphere([1], 1), set(&[2, 3]));
        assert!(g.sphere([1], 2).is_empty());
        assert!(g.adjacent(2, 3));
    }

    #[test]
    fn no_self_loops_and_symmetric() {
        let p = parse_poly("x1*x2*x3 + x1 + x3*x4 + 1").unwrap();
        let g = p.dependency_graph();
        for v in 1..=4 {
            assert!(!g.adjacent(v, v));
            for &w in g.neighbors(v) {
                assert!(g.adjacent(w, v));
            }
        }
    }

    #[test]
    fn degree_bound_on_random_corpus() {
        for seed in 0..200u64 {
            let n = 3 + (seed % 15) as u32;
            let d = 1 + (seed % 4) as u32;
            let delta = 1 + (seed % 3) as u32;
            let p = random_read_delta_poly(n, d.min(n), delta, seed).unwrap();
            let g = p.dependency_graph();
            if p.degree() >= 1 {
                assert!(g.max_degree() <= p.read() * (p.degree() - 1), "{p}");
            }
        }
    }
}
