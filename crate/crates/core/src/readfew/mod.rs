//! Bias and coefficient certificates for read-few polynomials.
//!
//! For `f = (-1)^p`, `f̂(S)` is the bias of `p_S = p + Σ_{i∈S} x_i`. The
//! certificates here split `p_S` into blocks around spread-out indices of
//! `S`, bound each block's bias, and bound the remainder through a greedy
//! cover by variable-disjoint monomials. Every bound is an exact rational.

use alloc::vec;
use alloc::vec::Vec;


use crate::f2poly::{PolyError, Var};
use crate::rational::Rational;
use crate::spectrum::SpectrumError;

mod certificate;
mod cover;
mod decompose;
mod selection;

pub use certificate::{best_bias_certificate, bias_certificate, coefficient_certificate, coefficient_certificate_with, BiasCertificate, CoefficientCertificate};
pub use cover::{greedy_disjoint_cover, CoverBlock, GreedyCover};
pub use decompose::{decompose_around, sj_bias_check, Block, Decomposition, SjBiasCheck};
pub use selection::{select_spread_indices, SpreadSelection};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReadFewError {
    #[error("x{0} is not in S")]
    NotInS(Var),
    #[error("x{0} does not occur in the polynomial")]
    NotOccurring(Var),
    #[error("x{a} and x{b} are closer than 4 in the dependency graph")]
    TooClose { a: Var, b: Var },
    #[error("block around x{0} shares a monomial with an earlier block")]
    BlocksOverlap(Var),
    #[error("selected index x{0} appears twice")]
    Duplicate(Var),
    #[error("block index {j} out of range ({count} blocks)")]
    BlockRange { j: usize, count: usize },
    #[error("decomposition does not reassemble p_S")]
    Reconstruction,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// `max{1/(Δ+1), 1 - 2^-t Δ}`, a lower bound on `Pr[r = 0]` for `r` with
/// at most `Δ` monomials, all of degree at least `t`, and `r(0) = 0`.
pub fn helper_bound(delta: u32, t: u32) -> Rational {
    let (num, den) = helper_bound_parts(delta, t);
    Rational::new(num.into(), den.into())
}

fn helper_bound_parts(delta: u32, t: u32) -> (i128, i128) {
    let (a_num, a_den) = (1i128, i128::from(delta) + 1);
    let b_den = 1i128 << t;
    let b_num = b_den - i128::from(delta);
    if a_num * b_den >= b_num * a_den {
        (a_num, a_den)
    } else {
        (b_num, b_den)
    }
}

/// Outcome of the exhaustive check of [`helper_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelperReport {
    pub n: u32,
    pub checked: u64,
    /// Tightest slack `Pr[r = 0] - bound` seen.
    pub min_slack: Rational,
    /// Monomial masks of the first violation, if any.
    pub counterexample: Option<Vec<u64>>,
}

/// Checks [`helper_bound`] on every set of at most `max_monomials`
/// distinct non-constant monomials over `n` variables. Each set is checked
/// with `t = min(minimum degree, max_t)`, the strongest admissible case.
pub fn helper_exhaustive(n: u32, max_monomials: usize, max_t: u32) -> HelperReport {
    assert!(n <= 12, "exhaustive check is limited to n <= 12");
    let words = (1usize << n).div_ceil(64);
    let size = 1u64 << n;
    let tables: Vec<Vec<u64>> = (1..size)
        .map(|m| {
            let mut t = vec![0u64; words];
            for x in 0..size {
                if x & m == m {
                    t[(x >> 6) as usize] |= 1 << (x & 63);
                }
            }
            t
        })
        .collect();
    let masks: Vec<u64> = (1..size).collect();
    let mut search = Search {
        masks: &masks,
        tables: &tables,
        max_t,
        size,
        chosen: Vec::new(),
        acc: vec![0u64; words],
        checked: 0,
        min_slack: (1, 1),
        counterexample: None,
    };
    search.extend(0, max_monomials);
    HelperReport {
        n,
        checked: search.checked,
        min_slack: Rational::new(search.min_slack.0.into(), search.min_slack.1.into()),
        counterexample: search.counterexample,
    }
}

struct Search<'a> {
    masks: &'a [u64],
    tables: &'a [Vec<u64>],
    max_t: u32,
    size: u64,
    chosen: Vec<usize>,
    acc: Vec<u64>,
    checked: u64,
    /// Slack as an unreduced fraction with positive denominator.
    min_slack: (i128, i128),
    counterexample: Option<Vec<u64>>,
}

impl Search<'_> {
    fn extend(&mut self, start: usize, left: usize) {
        self.visit();
        if left == 0 {
            return;
        }
        for i in start..self.masks.len() {
            self.chosen.push(i);
            self.acc.iter_mut().zip(&self.tables[i]).for_each(|(a, b)| *a ^= b);
            self.extend(i + 1, left - 1);
            self.acc.iter_mut().zip(&self.tables[i]).for_each(|(a, b)| *a ^= b);
            self.chosen.pop();
        }
    }

    fn visit(&mut self) {
        let ones: u64 = self.acc.iter().map(|w| u64::from(w.count_ones())).sum();
        let min_deg = self.chosen.iter().map(|&i| self.masks[i].count_ones()).min().unwrap_or(self.max_t);
        let (b_num, b_den) = helper_bound_parts(self.chosen.len() as u32, min_deg.min(self.max_t).max(1));
        let size = i128::from(self.size);
        let zeros = size - i128::from(ones);
        // zeros / size - b_num / b_den
        let slack = (zeros * b_den - b_num * size, size * b_den);
        if slack.0 * self.min_slack.1 < self.min_slack.0 * slack.1 {
            self.min_slack = slack;
        }
        if slack.0 < 0 && self.counterexample.is_none() {
            self.counterexample = Some(self.chosen.iter().map(|&i| self.masks[i]).collect());
        }
        self.checked += 1;
    }
}
