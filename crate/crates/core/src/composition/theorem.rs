use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{compose, CompositionError, CompositionSpec};
use crate::f2poly::{F2Poly, Restriction};
use crate::rational::{self, Rational};
use crate::spectrum::{compute_spectrum_with_cap, level_l1_profile, LevelL1Vector};

/// Parameters `(a, b)` with `L_{1,k} ≤ alpha · a · b^k` for `1 ≤ k ≤ k_max`,
/// where `alpha = (1 - |E|) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundProfile {
    pub a: Rational,
    pub b: Rational,
    pub k_max: usize,
    /// Restriction and level attaining the fitted `a`, if any level is nonzero.
    pub binding: Option<(Restriction, usize)>,
}

/// Smallest `a` making every level `1..=k_max` of `v` fit, or `None` if all
/// those levels vanish.
fn required_a(v: &LevelL1Vector, k_max: usize, b: &Rational) -> Option<(Rational, usize)> {
    let mut best: Option<(Rational, usize)> = None;
    for k in 1..=k_max {
        let l = v.level(k);
        if l.is_zero() {
            continue;
        }
        // alpha = 0 means a constant function, whose levels are all zero.
        let a = l / (&v.alpha * rational::pow(b, k));
        if best.as_ref().is_none_or(|(x, _)| a > *x) {
            best = Some((a, k));
        }
    }
    best
}

/// Fits `a` over the restriction closure of `f`: all `3^m` ways of leaving
/// each variable free or fixing it to 0 or 1.
pub fn fit_bound_profile(f: &F2Poly, k_max: usize, b: &Rational, closure_cap: u32) -> Result<BoundProfile, CompositionError> {
    let m = f.n();
    if m > closure_cap {
        return Err(CompositionError::ClosureCap { m, cap: closure_cap });
    }
    let mut a = Rational::zero();
    let mut binding = None;
    for r in Restriction::enumerate_all(m as usize) {
        let fr = f.restrict(&r)?;
        let v = level_l1_profile(&compute_spectrum_with_cap(&fr, m.max(1))?);
        if let Some((x, k)) = required_a(&v, k_max, b) {
            if x > a || binding.is_none() {
                a = x;
                binding = Some((r, k));
            }
        }
    }
    Ok(BoundProfile { a, b: b.clone(), k_max, binding })
}

/// Fits `a` for a single function, with no closure.
pub fn fit_single_profile(g: &F2Poly, k_max: usize, b: &Rational, cap: u32) -> Result<BoundProfile, CompositionError> {
    let v = level_l1_profile(&compute_spectrum_with_cap(g, cap)?);
    let found = required_a(&v, k_max, b);
    Ok(BoundProfile {
        a: found.as_ref().map(|(x, _)| x.clone()).unwrap_or_else(Rational::zero),
        b: b.clone(),
        k_max,
        binding: found.map(|(_, k)| (Restriction::free(g.n() as usize), k)),
    })
}

pub fn profile_holds_for(v: &LevelL1Vector, profile: &BoundProfile) -> bool {
    (1..=profile.k_max).all(|k| v.level(k) <= &v.alpha * &profile.a * rational::pow(&profile.b, k))
}

fn closure_holds(f: &F2Poly, profile: &BoundProfile, closure_cap: u32) -> Result<bool, CompositionError> {
    let m = f.n();
    if m > closure_cap {
        return Err(CompositionError::ClosureCap { m, cap: closure_cap });
    }
    for r in Restriction::enumerate_all(m as usize) {
        let v = level_l1_profile(&compute_spectrum_with_cap(&f.restrict(&r)?, m.max(1))?);
        if !profile_holds_for(&v, profile) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisStatus {
    /// Outer profile holds on the whole restriction closure of `f`.
    pub outer: bool,
    /// Inner profile holds for each `g_i`.
    pub inners: Vec<bool>,
}

impl HypothesisStatus {
    pub fn all(&self) -> bool {
        self.outer && self.inners.iter().all(|&x| x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionBoundReport {
    pub k: usize,
    pub lhs: Rational,
    pub alpha_h: Rational,
    pub rhs: Rational,
    /// `alpha_h · a_out · (a_in b_in b_out)^K / 2`.
    pub simplified_rhs: Rational,
    /// `a_in · b_out ≥ 2` or `K = 1`.
    pub simplified_applies: bool,
    pub hypotheses: HypothesisStatus,
    pub lhs_le_rhs: bool,
    /// `Some(lhs ≤ rhs)` when the hypotheses hold, `None` otherwise.
    pub pass: Option<bool>,
}

/// `alpha_h · a_out · b_in^K · x (1 + x)^{K-1}` with `x = a_in b_out / 2`.
pub fn composition_rhs(alpha_h: &Rational, outer: &BoundProfile, inner: &BoundProfile, k: usize) -> Rational {
    let x = &inner.a * &outer.b / rational::int(2);
    alpha_h * &outer.a * rational::pow(&inner.b, k) * &x * rational::pow(&(Rational::one() + &x), k.saturating_sub(1))
}

pub fn composition_simplified_rhs(alpha_h: &Rational, outer: &BoundProfile, inner: &BoundProfile, k: usize) -> Rational {
    alpha_h * &outer.a * rational::pow(&(&inner.a * &inner.b * &outer.b), k) / rational::int(2)
}

/// Checks `L_{1,K}(h)` against the composition bound, with the outer
/// hypothesis tested over the restriction closure of `f` and the inner one
/// on each given `g_i`.
pub fn verify_composition_bound(
    spec: &CompositionSpec,
    k: usize,
    outer: &BoundProfile,
    inner: &BoundProfile,
    cap: u32,
    closure_cap: u32,
) -> Result<CompositionBoundReport, CompositionError> {
    let h = compose(spec, cap)?;
    let hv = level_l1_profile(&compute_spectrum_with_cap(&h, cap)?);
    let mut inners = Vec::with_capacity(spec.m());
    for g in spec.inners() {
        let v = level_l1_profile(&compute_spectrum_with_cap(g, cap)?);
        inners.push(k <= inner.k_max && profile_holds_for(&v, inner));
    }
    let hypotheses = HypothesisStatus { outer: k <= outer.k_max && closure_holds(spec.outer(), outer, closure_cap)?, inners };
    let lhs = hv.level(k);
    let alpha_h = hv.alpha.clone();
    let rhs = composition_rhs(&alpha_h, outer, inner, k);
    let simplified_rhs = composition_simplified_rhs(&alpha_h, outer, inner, k);
    let simplified_applies = k == 1 || &inner.a * &outer.b >= rational::int(2);
    let lhs_le_rhs = lhs <= rhs;
    let pass = hypotheses.all().then_some(lhs_le_rhs);
    Ok(CompositionBoundReport { k, lhs, alpha_h, rhs, simplified_rhs, simplified_applies, hypotheses, lhs_le_rhs, pass })
}
