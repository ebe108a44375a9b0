//! Sparse polynomials over GF(2) in algebraic normal form.
//!
//! Variables are 1-indexed and the ambient variable count `n` is carried
//! explicitly, so a polynomial may mention fewer variables than it is
//! defined over. Construction always XOR-canonicalizes: a monomial inserted
//! twice cancels.

mod generate;
mod graph;
mod parse;
mod restriction;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

pub use generate::random_read_delta_poly;
pub use graph::{DependencyGraph, Distance};
pub use parse::{parse_poly, parse_poly_in, ParseError, ParseErrorKind};
pub use restriction::{sample_rho_restriction, Restriction, VarState};

/// A 1-based variable index.
pub type Var = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable index {index} is outside 1..={n}")]
    IndexOutOfRange { index: Var, n: u32 },
    #[error("variable indices are 1-based; got 0")]
    ZeroIndex,
    #[error("input has {got} entries but the polynomial has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("restriction covers {got} variables, polynomial has {expected}")]
    RestrictionArity { expected: usize, got: usize },
    #[error("rho must be a dyadic rational in [0, 1]")]
    InvalidRho,
    #[error("infeasible generator parameters: {0}")]
    Infeasible(&'static str),
}

/// A product of distinct variables; the empty product is the constant 1.
///
/// Monomials order by degree first and then lexicographically by their
/// sorted indices, which is also the canonical print order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    /// Builds a monomial from arbitrary indices. Repeated indices collapse
    /// since `x * x = x` on Boolean inputs.
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: Vec<Var> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.0.last().copied()
    }

    /// Bitmask with bit `i - 1` set for each variable `x_i`. Requires all
    /// indices to be at most 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | 1u64 << (v - 1))
    }

    pub fn from_mask(mask: u64) -> Self {
        Monomial((0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
    }

    /// The product with another monomial (union of variable sets).
    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_subset_of(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A polynomial over GF(2) on variables `x_1..x_n`, stored as its set of
/// monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F2Poly {
    n: u32,
    monomials: BTreeSet<Monomial>,
}

impl F2Poly {
    pub fn zero(n: u32) -> Self {
        F2Poly { n, monomials: BTreeSet::new() }
    }

    pub fn one(n: u32) -> Self {
        let mut p = F2Poly::zero(n);
        p.monomials.insert(Monomial::one());
        p
    }

    /// XOR-sums the given monomials; pairs of equal monomials cancel.
    pub fn from_monomials(
        n: u32,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, PolyError> {
        let mut p = F2Poly::zero(n);
        for m in monomials {
            if let Some(&v) = m.vars().first() {
                if v == 0 {
                    return Err(PolyError::ZeroIndex);
                }
            }
            if let Some(v) = m.max_var() {
                if v > n {
                    return Err(PolyError::IndexOutOfRange { index: v, n });
                }
            }
            p.toggle(m);
        }
        Ok(p)
    }

    /// Linear form `sum_{i in vars} x_i`.
    pub fn parity(n: u32, vars: impl IntoIterator<Item = Var>) -> Result<Self, PolyError> {
        F2Poly::from_monomials(n, vars.into_iter().map(|v| Monomial::new([v])))
    }

    pub(crate) fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn has_constant_term(&self) -> bool {
        self.monomials.contains(&Monomial::one())
    }

    /// Maximum monomial size; 0 for the zero and constant polynomials.
    pub fn degree(&self) -> usize {
        self.monomials.iter().next_back().map_or(0, Monomial::degree)
    }

    /// Number of monomials containing `x_v`.
    pub fn read_of(&self, v: Var) -> usize {
        self.monomials.iter().filter(|m| m.contains(v)).count()
    }

    /// Maximum over variables of the number of monomials containing it.
    pub fn read(&self) -> usize {
        let mut counts: BTreeMap<Var, usize> = BTreeMap::new();
        for m in &self.monomials {
            for &v in m.vars() {
                *counts.entry(v).or_insert(0) += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Variables appearing in at least one monomial.
    pub fn occurring_vars(&self) -> BTreeSet<Var> {
        self.monomials.iter().flat_map(|m| m.vars().iter().copied()).collect()
    }

    /// Same monomials over a larger ambient variable count.
    pub fn widen(&self, n: u32) -> Result<Self, PolyError> {
        if let Some(v) = self.occurring_vars().last() {
            if *v > n {
                return Err(PolyError::IndexOutOfRange { index: *v, n });
            }
        }
        Ok(F2Poly { n, monomials: self.monomials.clone() })
    }

    /// GF(2) sum. The result lives on `max(self.n, other.n)` variables.
    pub fn xor(&self, other: &F2Poly) -> F2Poly {
        let mut out = F2Poly { n: self.n.max(other.n), monomials: self.monomials.clone() };
        for m in &other.monomials {
            out.toggle(m.clone());
        }
        out
    }

    /// Renames every variable through `map` into a polynomial on `n`
    /// variables. `map` must be injective on the occurring variables.
    pub fn relabel(&self, n: u32, map: impl Fn(Var) -> Var) -> Result<F2Poly, PolyError> {
        F2Poly::from_monomials(
            n,
            self.monomials.iter().map(|m| Monomial::new(m.vars().iter().map(|&v| map(v)))),
        )
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool, PolyError> {
        if x.len() != self.n as usize {
            return Err(PolyError::LengthMismatch { expected: self.n as usize, got: x.len() });
        }
        Ok(self
            .monomials
            .iter()
            .filter(|m| m.vars().iter().all(|&v| x[v as usize - 1]))
            .count()
            % 2
            == 1)
    }

    /// Evaluation at the point whose bit `i - 1` is `x_i`. Requires `n <= 64`.
    pub fn eval_mask(&self, x: u64) -> bool {
        self.monomials.iter().filter(|m| x & m.mask() == m.mask()).count() % 2 == 1
    }

    /// `p + sum_{i in s} x_i`.
    pub fn add_parity(&self, s: &BTreeSet<Var>) -> Result<F2Poly, PolyError> {
        let mut out = self.clone();
        for &v in s {
            if v == 0 {
                return Err(PolyError::ZeroIndex);
            }
            if v > self.n {
                return Err(PolyError::IndexOutOfRange { index: v, n: self.n });
            }
            out.toggle(Monomial::new([v]));
        }
        Ok(out)
    }

    /// Substitutes the fixed variables of `r`. The result keeps the original
    /// indexing; fixed variables simply no longer occur.
    pub fn restrict(&self, r: &Restriction) -> Result<F2Poly, PolyError> {
        if r.n() != self.n as usize {
            return Err(PolyError::RestrictionArity { expected: self.n as usize, got: r.n() });
        }
        let mut out = F2Poly::zero(self.n);
        'mono: for m in &self.monomials {
            let mut kept = Vec::with_capacity(m.degree());
            for &v in m.vars() {
                match r.state(v) {
                    VarState::Free => kept.push(v),
                    VarState::Fixed(true) => {}
                    VarState::Fixed(false) => continue 'mono,
                }
            }
            out.toggle(Monomial(kept));
        }
        Ok(out)
    }

    /// Sub-polynomial made of the monomials satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> F2Poly {
        F2Poly {
            n: self.n,
            monomials: self.monomials.iter().filter(|m| keep(m)).cloned().collect(),
        }
    }

    /// Partition of the occurring variables by the minimum degree of the
    /// monomials containing them: `t -> V_t(p)`.
    pub fn variable_strata(&self) -> BTreeMap<usize, BTreeSet<Var>> {
        let mut min_deg: BTreeMap<Var, usize> = BTreeMap::new();
        for m in &self.monomials {
            for &v in m.vars() {
                let e = min_deg.entry(v).or_insert(m.degree());
                *e = (*e).min(m.degree());
            }
        }
        let mut strata: BTreeMap<usize, BTreeSet<Var>> = BTreeMap::new();
        for (v, t) in min_deg {
            strata.entry(t).or_default().insert(v);
        }
        strata
    }

    /// Minimum degree of the monomials containing `x_v`, if it occurs.
    pub fn stratum_of(&self, v: Var) -> Option<usize> {
        self.monomials.iter().filter(|m| m.contains(v)).map(Monomial::degree).min()
    }

    pub fn dependency_graph(&self) -> DependencyGraph {
        DependencyGraph::build(self)
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> F2Poly {
        parse_poly(s).unwrap()
    }

    fn set(v: &[Var]) -> BTreeSet<Var> {
        v.iter().copied().collect()
    }

    #[test]
    fn eval_examples() {
        let q = p("x1*x2 + x3");
        assert!(q.eval(&[true, true, false]).unwrap());
        assert!(!q.eval(&[true, true, true]).unwrap());
        assert!(!F2Poly::zero(4).eval(&[true; 4]).unwrap());
        assert_eq!(
            q.eval(&[true]),
            Err(PolyError::LengthMismatch { expected: 3, got: 1 })
        );
    }

    #[test]
    fn eval_mask_agrees_with_eval() {
        let q = p("x1*x2*x4 + x2*x3 + x4 + 1");
        for x in 0u64..16 {
            let bits: Vec<bool> = (0..4).map(|i| x >> i & 1 == 1).collect();
            assert_eq!(q.eval(&bits).unwrap(), q.eval_mask(x));
        }
    }

    #[test]
    fn add_parity_examples() {
        assert_eq!(p("x1*x2").add_parity(&set(&[1])).unwrap().to_string(), "x1 + x1*x2");
        assert!(p("x1").add_parity(&set(&[1])).unwrap().is_zero());
        assert_eq!(p("x1*x2 + x3").add_parity(&set(&[3])).unwrap().to_string(), "x1*x2");
        assert_eq!(
            p("x1").add_parity(&set(&[2])),
            Err(PolyError::IndexOutOfRange { index: 2, n: 1 })
        );
    }

    #[test]
    fn restrict_examples() {
        let q = p("x1*x2 + x3");
        let mut r = Restriction::free(3);
        r.fix(1, true);
        assert_eq!(q.restrict(&r).unwrap().to_string(), "x2 + x3");
        let mut r = Restriction::free(3);
        r.fix(1, false);
        assert_eq!(q.restrict(&r).unwrap().to_string(), "x3");
        let mut r = Restriction::free(2);
        r.fix(1, true);
        r.fix(2, true);
        let c = p("x1*x2").restrict(&r).unwrap();
        assert_eq!(c, F2Poly::one(2));
        assert_eq!(c.degree(), 0);
    }

    #[test]
    fn structural_measures() {
        let q = p("x1*x2 + x1*x3 + x1 + 1");
        assert_eq!(q.degree(), 2);
        assert_eq!(q.read(), 3);
        assert_eq!(q.read_of(2), 1);
        assert_eq!(F2Poly::zero(3).degree(), 0);
        assert_eq!(F2Poly::one(3).degree(), 0);
        assert_eq!(F2Poly::one(3).read(), 0);
    }

    #[test]
    fn strata_examples() {
        let s = p("x1*x2 + x2*x3*x4 + x5").variable_strata();
        assert_eq!(s[&1], set(&[5]));
        assert_eq!(s[&2], set(&[1, 2]));
        assert_eq!(s[&3], set(&[3, 4]));

        let s = p("x1*x2").variable_strata();
        assert_eq!(s.get(&1), None);
        assert_eq!(s[&2], set(&[1, 2]));

        let s = p("x1 + x1*x2").variable_strata();
        assert_eq!(s[&1], set(&[1]));
        assert_eq!(s[&2], set(&[2]));
    }

    #[test]
    fn strata_skip_padding_variables() {
        let q = parse_poly_in("x2*x3", 6).unwrap();
        let all: BTreeSet<Var> = q.variable_strata().values().flatten().copied().collect();
        assert_eq!(all, set(&[2, 3]));
    }

    #[test]
    fn monomial_order_is_size_then_lex() {
        let mut ms = [Monomial::new([2, 3]),
            Monomial::new([1]),
            Monomial::one(),
            Monomial::new([1, 3]),
            Monomial::new([1, 2, 3])];
        ms.sort();
        let printed: Vec<_> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(printed, ["1", "x1", "x1*x3", "x2*x3", "x1*x2*x3"]);
    }

    #[test]
    fn from_monomials_rejects_out_of_range() {
        assert_eq!(
            F2Poly::from_monomials(2, [Monomial::new([3])]),
            Err(PolyError::IndexOutOfRange { index: 3, n: 2 })
        );
        assert_eq!(F2Poly::from_monomials(2, [Monomial::new([0])]), Err(PolyError::ZeroIndex));
    }
}
