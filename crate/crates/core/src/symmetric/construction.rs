use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{poly_from_profile, signed_binomial_product, SymmetricError, SymmetricPoly, SymmetricProfile};
use crate::rational;

/// `h̃_k(w) = sgn K(n, w, k)` for `w = 0..=n`, with `sgn 0 = +1`.
///
/// By the symmetry relation `K(n, w, k)` has the sign of `K(n, k, w)`, so a
/// single expansion row suffices.
pub fn hk_signs(n: usize, k: usize) -> Result<Vec<i8>, SymmetricError> {
    if k == 0 || k > n {
        return Err(SymmetricError::LevelRange { n, k });
    }
    Ok(signed_binomial_product(k, n - k)
        .iter()
        .map(|x| if x.is_negative() { -1 } else { 1 })
        .collect())
}

/// `h_k` as a {0,1} profile: the bit is 1 exactly where `h̃_k = -1`.
pub fn hk_profile(n: usize, k: usize) -> Result<SymmetricProfile, SymmetricError> {
    let signs = hk_signs(n, k)?;
    SymmetricProfile::new(signs.iter().map(|&s| s < 0).collect())
}

/// A symmetric polynomial whose level-`k` norm is large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub n: usize,
    pub k: usize,
    /// Power of two with `16kn <= m^2 <= 64kn`.
    pub m: usize,
    /// The profile has period dividing `2m` and agrees with `h_k` on weights
    /// `lo..hi`.
    pub window: (usize, usize),
    pub profile: SymmetricProfile,
    pub poly: SymmetricPoly,
}

/// Degree `< 2m` polynomial agreeing with `h_k` on the weights `w` with
/// `2w` in `[n - 2m, n + 2m)`, extended with period `2m`.
pub fn lower_bound_construction(n: usize, k: usize) -> Result<LowerBound, SymmetricError> {
    let signs = hk_signs(n, k)?;
    let kn = 16 * (k as u128) * (n as u128);
    let no_m = || SymmetricError::NoAdmissibleM { n, k, lo_sq: kn, hi_sq: 4 * kn };
    let mut m: usize = 1;
    while (m as u128) * (m as u128) < kn {
        m *= 2;
    }
    if (m as u128) * (m as u128) > 4 * kn || 2 * m > n + 1 {
        return Err(no_m());
    }
    let period = 2 * m;
    // Integers in [n/2 - m, n/2 + m); one per residue class mod 2m, all
    // within 0..=n because 2m <= n + 1.
    let lo = (n + 1 - period) / 2;
    let hi = lo + period;
    let mut residues = alloc::vec![false; period];
    for w in lo..hi {
        residues[w % period] = signs[w] < 0;
    }
    let profile = SymmetricProfile::from_residues(n, &residues);
    let poly = poly_from_profile(&profile, period)?;
    Ok(LowerBound { n, k, m, window: (lo, hi), profile, poly })
}

/// `|K(n, ⌊n/2⌋ + s, k)|` against `(n/k)^(k/2) + (|s|/k)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct KravchukDiagnostic {
    pub n: usize,
    pub k: usize,
    pub s: i64,
    pub numerator: BigInt,
    pub denominator: f64,
    pub ratio: f64,
}

pub fn kravchuk_diagnostic(n: usize, k: usize, s: i64) -> Result<KravchukDiagnostic, SymmetricError> {
    let w = (n / 2) as i64 + s;
    if k > n || w < 0 || w > n as i64 {
        return Err(SymmetricError::KravchukRange { n, k, w: w.max(0) as usize });
    }
    let numerator = super::kravchuk(n, w as usize, k)?.abs();
    let denominator = if k == 0 {
        1.0
    } else {
        let (n, k, s) = (n as f64, k as f64, s.unsigned_abs() as f64);
        libm::pow(n / k, k / 2.0) + libm::pow(s / k, k)
    };
    let ratio = rational::to_f64(&rational::Rational::from_integer(numerator.clone())) / denominator;
    Ok(KravchukDiagnostic { n, k, s, numerator, denominator, ratio })
}

/// Compares `level` with `(e^{-k} / 2) · √C(n, k)` exactly, squaring both
/// sides and bracketing `e^{2k}` with the rational enclosure of `e`.
pub fn compare_with_lower_target(level: &rational::Rational, n: usize, k: usize) -> rational::EnclosureOrdering {
    use rational::EnclosureOrdering;
    let (lo, hi) = rational::euler_enclosure();
    let c = rational::Rational::from_integer(super::binomial(n, k));
    let lhs = level * level * rational::int(4);
    if &lhs * rational::pow(&lo, 2 * k) >= c {
        EnclosureOrdering::Above
    } else if &lhs * rational::pow(&hi, 2 * k) < c {
        EnclosureOrdering::Below
    } else {
        EnclosureOrdering::Undecided
    }
}
