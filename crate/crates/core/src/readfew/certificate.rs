use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{decompose_around, greedy_disjoint_cover, select_spread_indices, Decomposition, ReadFewError, SpreadSelection};
use crate::f2poly::{F2Poly, Var};
use crate::rational::{self, Rational};
use crate::spectrum::{exact_bias, exact_coefficient};

/// `|E[(-1)^q]| <= (1 - 2^-t / Δ')^ℓ` with `ℓ` from the greedy cover.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasCertificate {
    pub t: usize,
    pub ell: usize,
    /// `Δ' = read(q)`.
    pub read: usize,
    pub stratum_size: usize,
    pub bound: Rational,
    /// `exp(-2^-t |V_t(q)| / (Δd)^4)`, display only.
    pub exp_bound: f64,
    pub count_bound_holds: bool,
    pub exact: Option<Rational>,
    pub pass: Option<bool>,
}

pub fn bias_certificate(q: &F2Poly, t: usize, cap: u32) -> BiasCertificate {
    let cover = greedy_disjoint_cover(q, t);
    let read = q.read();
    let d = q.degree();
    let bound = if read == 0 || t == 0 {
        Rational::one()
    } else {
        let factor = Rational::one() - rational::inv_pow2(t as u32) / rational::int(read as i64);
        rational::pow(&factor, cover.ell())
    };
    let exp_bound = if read == 0 {
        1.0
    } else {
        let dd = (read * d) as f64;
        libm::exp(-libm::ldexp(cover.stratum_size as f64, -(t as i32)) / (dd * dd * dd * dd))
    };
    let exact = exact_bias(q, cap).ok().map(|b| if b < Rational::zero() { -b } else { b });
    let pass = exact.as_ref().map(|e| *e <= bound);
    BiasCertificate {
        t,
        ell: cover.ell(),
        read,
        stratum_size: cover.stratum_size,
        bound,
        exp_bound,
        count_bound_holds: cover.count_bound_holds(read, d),
        exact,
        pass,
    }
}

/// Smallest certified bias bound over all strata of `q`, clamped to 1,
/// with the stratum attaining it.
pub fn best_bias_certificate(q: &F2Poly) -> (Rational, Option<usize>) {
    let mut best = (Rational::one(), None);
    for &t in q.variable_strata().keys() {
        let c = bias_certificate(q, t, 0);
        if c.bound < best.0 {
            best = (c.bound, Some(t));
        }
    }
    best
}

/// Certified upper bound on `|f̂(S)|` with its intermediate pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientCertificate {
    pub s: BTreeSet<Var>,
    pub selection: SpreadSelection,
    pub decomposition: Decomposition,
    /// `min(1, Δ 2^{-(t_j - 1)})` per block.
    pub block_factors: Vec<Rational>,
    pub block_factor: Rational,
    /// `min(1, best bias bound of r')`.
    pub remainder_factor: Rational,
    pub remainder_t: Option<usize>,
    /// No block reaches into `R`; only then does the remainder factor
    /// multiply in.
    pub decoupled: bool,
    /// Certified bound: 0 when `S` has an isolated index, otherwise the
    /// block factor times (when decoupled) the remainder factor.
    pub bound: Rational,
    /// `(2Δ)^ℓ Π 2^{-t_j} · remainder_factor` regardless of coupling.
    /// Reported for comparison, not certified.
    pub chain_bound: Rational,
    pub exact: Option<Rational>,
    pub pass: Option<bool>,
    pub chain_pass: Option<bool>,
}

impl CoefficientCertificate {
    pub fn ell(&self) -> usize {
        self.selection.ell()
    }

    pub fn t_list(&self) -> &[usize] {
        &self.selection.strata
    }

    pub fn isolated(&self) -> bool {
        !self.selection.isolated.is_empty()
    }
}

/// Certificate for `|f̂(S)|`, with the exact value computed under `cap`
/// when possible.
pub fn coefficient_certificate(p: &F2Poly, s: &BTreeSet<Var>, cap: u32) -> Result<CoefficientCertificate, ReadFewError> {
    let exact = exact_coefficient(p, s, cap).ok();
    coefficient_certificate_with(p, s, exact)
}

/// Certificate for `|f̂(S)|` given an externally computed exact value.
pub fn coefficient_certificate_with(
    p: &F2Poly,
    s: &BTreeSet<Var>,
    exact: Option<Rational>,
) -> Result<CoefficientCertificate, ReadFewError> {
    let selection = select_spread_indices(p, s);
    let decomposition = decompose_around(p, s, &selection)?;
    let delta = rational::int(p.read() as i64);
    let half = rational::frac(1, 2);
    let block_factors: Vec<Rational> = selection
        .strata
        .iter()
        .map(|&t| (&delta * rational::pow(&half, t - 1)).min(Rational::one()))
        .collect();
    let block_factor = block_factors.iter().fold(Rational::one(), |a, b| a * b);
    let (remainder_factor, remainder_t) = best_bias_certificate(&decomposition.r_prime);
    let chain_bound = selection
        .strata
        .iter()
        .fold(&remainder_factor * Rational::one(), |a, &t| a * &delta * rational::pow(&half, t - 1));
    let decoupled = decomposition.decoupled();
    let bound = if !selection.isolated.is_empty() {
        Rational::zero()
    } else if decoupled {
        &block_factor * &remainder_factor
    } else {
        block_factor.clone()
    };
    let exact = exact.map(|e| if e < Rational::zero() { -e } else { e });
    let pass = exact.as_ref().map(|e| *e <= bound);
    let chain_pass = exact.as_ref().map(|e| *e <= chain_bound);
    Ok(CoefficientCertificate {
        s: s.clone(),
        selection,
        decomposition,
        block_factors,
        block_factor,
        remainder_factor,
        remainder_t,
        decoupled,
        bound,
        chain_bound,
        exact,
        pass,
        chain_pass,
    })
}
