use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CompositionError;
use crate::f2poly::F2Poly;
use crate::rational::{self, compare_with_e_multiple, EnclosureOrdering, Rational};
use crate::spectrum::{compute_spectrum_with_cap, level_l1_profile, LevelL1Vector};

fn truncated_mul(a: &[Rational], b: &[Rational], k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); k + 1];
    for (i, x) in a.iter().enumerate().take(k + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `L_{1,k}` of the XOR of `t` disjoint copies, from the level vector of one
/// copy: the coefficient of `x^k` in `(Σ_j L_{1,j} x^j)^t`.
pub fn xor_power_level(v: &LevelL1Vector, t: usize, k: usize) -> Rational {
    let base: Vec<Rational> = (0..=k).map(|j| v.level(j)).collect();
    let mut acc = vec![Rational::zero(); k + 1];
    acc[0] = Rational::one();
    let mut sq = base;
    let mut e = t;
    while e > 0 {
        if e & 1 == 1 {
            acc = truncated_mul(&acc, &sq, k);
        }
        e >>= 1;
        if e > 0 {
            sq = truncated_mul(&sq, &sq, k);
        }
    }
    acc.swap_remove(k)
}

/// True when `c^t · e < 1`, decided exactly.
fn past_threshold(c: &Rational, t: usize) -> Result<bool, CompositionError> {
    match compare_with_e_multiple(&Rational::one(), &rational::pow(c, t)) {
        EnclosureOrdering::Above => Ok(true),
        EnclosureOrdering::Below => Ok(false),
        EnclosureOrdering::Undecided => Err(CompositionError::EnclosureUndecided),
    }
}

/// `t = ⌈t*⌉` with `t* = 1 / (-ln(1 - 2α))`, at least 1.
///
/// Equivalently the least `t ≥ 1` with `(1 - 2α)^t · e < 1`; the float
/// estimate is corrected by exact comparisons.
pub fn xor_choice_t(alpha: &Rational) -> Result<usize, CompositionError> {
    let c = Rational::one() - alpha * rational::int(2);
    if c.is_zero() {
        return Ok(1);
    }
    let est = 1.0 / -libm::log(rational::to_f64(&c));
    let mut t = if est.is_finite() { libm::ceil(est).max(1.0) as usize } else { 1 };
    while !past_threshold(&c, t)? {
        t += 1;
    }
    while t > 1 && past_threshold(&c, t - 1)? {
        t -= 1;
    }
    Ok(t)
}

/// `Λ(t) = t (1 - 2α)^{t-1} · 2e · α · b^k`.
pub fn lambda(t: f64, alpha: f64, b: f64, k: usize) -> f64 {
    t * libm::pow(1.0 - 2.0 * alpha, t - 1.0) * 2.0 * core::f64::consts::E * alpha * libm::pow(b, k as f64)
}

/// Smallest `j / 2^bits` whose `k`-th power is at least `m`.
pub fn dyadic_root_ceil(m: &Rational, k: usize, bits: u32) -> Rational {
    let scale = rational::pow2(bits);
    if !m.is_positive() || k == 0 {
        return Rational::zero();
    }
    let fits = |j: &BigInt| rational::pow(&Rational::new(j.clone(), scale.clone()), k) >= *m;
    let guess = libm::pow(rational::to_f64(m), 1.0 / k as f64) * libm::pow(2.0, bits as f64);
    let mut j = BigInt::from(libm::ceil(guess).max(1.0) as u64);
    while !fits(&j) {
        j += 1;
    }
    while j > BigInt::one() && fits(&(&j - 1)) {
        j -= 1;
    }
    Rational::new(j, scale)
}

#[derive(Clone, Debug, PartialEq)]
pub struct XorReductionReport {
    pub k: usize,
    pub l1k: Rational,
    pub alpha: Rational,
    /// `None` when `α = 0`.
    pub t_star: Option<f64>,
    pub t: usize,
    pub l1k_xor: Rational,
    pub b: Rational,
    /// `L_{1,k}(f^{⊕t}) ≥ t (1 - 2α)^{t-1} L_{1,k}(f)`.
    pub chain_holds: bool,
    /// `L_{1,k}(f^{⊕t}) ≤ b^k`.
    pub hypothesis_holds: bool,
    /// `L_{1,k}(f)` against `2e · α · b^k`.
    pub ordering: EnclosureOrdering,
    pub trivial: bool,
    /// `Some(L_{1,k}(f) ≤ 2e α b^k)` when the hypothesis holds.
    pub pass: Option<bool>,
}

/// Replays the XOR-copy argument: picks `t`, computes the level of
/// `f^{⊕t}` exactly and checks `L_{1,k}(f) ≤ 2e · α · b^k`.
///
/// Without `b`, the smallest 16-bit dyadic with `b^k ≥ L_{1,k}(f^{⊕t})` is used.
pub fn verify_xor_reduction(f: &F2Poly, k: usize, b: Option<&Rational>, cap: u32) -> Result<XorReductionReport, CompositionError> {
    let v = level_l1_profile(&compute_spectrum_with_cap(f, cap)?);
    let l1k = v.level(k);
    let alpha = v.alpha.clone();
    if alpha.is_zero() {
        let b = b.cloned().unwrap_or_else(Rational::zero);
        return Ok(XorReductionReport {
            k,
            l1k: l1k.clone(),
            alpha,
            t_star: None,
            t: 1,
            l1k_xor: l1k,
            b,
            chain_holds: true,
            hypothesis_holds: true,
            ordering: EnclosureOrdering::Below,
            trivial: true,
            pass: Some(true),
        });
    }
    let t_star = 1.0 / -libm::log(1.0 - 2.0 * rational::to_f64(&alpha));
    let t = xor_choice_t(&alpha)?;
    let l1k_xor = xor_power_level(&v, t, k);
    let b = b.cloned().unwrap_or_else(|| dyadic_root_ceil(&l1k_xor, k, 16));
    let c = Rational::one() - &alpha * rational::int(2);
    let chain_holds = l1k_xor >= rational::int(t as i64) * rational::pow(&c, t - 1) * &l1k;
    let bk = rational::pow(&b, k);
    let hypothesis_holds = l1k_xor <= bk;
    let ordering = compare_with_e_multiple(&l1k, &(rational::int(2) * &alpha * &bk));
    if ordering == EnclosureOrdering::Undecided {
        return Err(CompositionError::EnclosureUndecided);
    }
    let pass = hypothesis_holds.then_some(ordering == EnclosureOrdering::Below);
    Ok(XorReductionReport {
        k,
        l1k,
        alpha,
        t_star: Some(t_star),
        t,
        l1k_xor,
        b,
        chain_holds,
        hypothesis_holds,
        ordering,
        trivial: false,
        pass,
    })
}
