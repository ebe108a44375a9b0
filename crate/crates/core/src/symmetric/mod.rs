//! Symmetric polynomials and the Kravchuk fast path.
//!
//! A symmetric F2-polynomial is determined by which elementary symmetric
//! levels it contains. Its value at weight `w` is `Σ_k c_k C(w, k) mod 2`,
//! and `C(w, k)` is odd iff the bits of `k` are a subset of the bits of `w`.
//! Level norms come from `p̂([k]) = 2^-n Σ_w p̃(w) K(n, k, w)` without any
//! `2^n` work.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::f2poly::{F2Poly, Monomial, PolyError, Var};
use crate::rational::{self, Rational};
use crate::spectrum::LevelL1Vector;

mod construction;
mod kravchuk;

pub use construction::{
    compare_with_lower_target, hk_profile, hk_signs, kravchuk_diagnostic, lower_bound_construction, KravchukDiagnostic, LowerBound,
};
pub use kravchuk::{binomial, binomial_row, kravchuk, signed_binomial_product, KravchukTable};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SymmetricError {
    #[error("Kravchuk arguments out of range: n={n}, k={k}, w={w}")]
    KravchukRange { n: usize, k: usize, w: usize },
    #[error("polynomial is not symmetric: level {level} has {present} of {total} monomials")]
    NotSymmetric { level: usize, present: usize, total: BigInt },
    #[error("{m} is not a power of two")]
    NotPowerOfTwo { m: usize },
    #[error("profile is not periodic modulo {m}")]
    NotPeriodic { m: usize },
    #[error("profile needs n + 1 values, got {got} for n = {n}")]
    ProfileLength { n: usize, got: usize },
    #[error("level {k} out of range for n = {n}")]
    LevelRange { n: usize, k: usize },
    #[error("no power of two m with {lo_sq} <= m^2 <= {hi_sq} and 2m <= n + 1 (n={n}, k={k})")]
    NoAdmissibleM { n: usize, k: usize, lo_sq: u128, hi_sq: u128 },
    #[error("materializing would produce {count} monomials, above the limit {limit}")]
    TooLarge { count: BigInt, limit: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Value table `p̃(w)` for `w = 0..=n` with its detected period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricProfile {
    n: usize,
    values: Vec<bool>,
    period: usize,
}

impl SymmetricProfile {
    pub fn new(values: Vec<bool>) -> Result<Self, SymmetricError> {
        if values.is_empty() {
            return Err(SymmetricError::ProfileLength { n: 0, got: 0 });
        }
        let n = values.len() - 1;
        let mut profile = SymmetricProfile { n, values, period: n + 1 };
        profile.period = profile.detect_period();
        Ok(profile)
    }

    /// Profile of length `n + 1` that repeats `residues` with period
    /// `residues.len()`.
    pub fn from_residues(n: usize, residues: &[bool]) -> Self {
        let values = (0..=n).map(|w| residues[w % residues.len()]).collect();
        Self::new(values).expect("length is n + 1")
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        Self::new((0..=n).map(f).collect()).expect("length is n + 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, w: usize) -> bool {
        self.values[w]
    }

    /// Smallest power of two `m <= n` with `p̃(w) = p̃(w mod m)`, or `n + 1`
    /// when none exists.
    pub fn period(&self) -> usize {
        self.period
    }

    pub fn is_aperiodic(&self) -> bool {
        self.period == self.n + 1
    }

    pub fn is_periodic_mod(&self, m: usize) -> bool {
        m > 0 && (0..=self.n).all(|w| self.values[w] == self.values[w % m])
    }

    fn detect_period(&self) -> usize {
        let mut m = 1;
        while m <= self.n {
            if self.is_periodic_mod(m) {
                return m;
            }
            m *= 2;
        }
        self.n + 1
    }

    /// `Pr[p = 1]` for uniform `x`.
    pub fn probability_one(&self) -> Rational {
        let row = binomial_row(self.n);
        let ones: BigInt = row.iter().zip(&self.values).filter(|(_, &v)| v).map(|(c, _)| c).sum();
        Rational::new(ones, rational::pow2(self.n as u32))
    }

    /// The pointwise complement `1 + p`.
    pub fn complement(&self) -> Self {
        Self::new(self.values.iter().map(|v| !v).collect()).expect("same length")
    }

    /// Bits `p̃(0) p̃(1) ... p̃(n)` as a string of '0' and '1'.
    pub fn bit_string(&self) -> alloc::string::String {
        self.values.iter().map(|&v| if v { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        let values = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Self::new(values).ok()
    }
}

/// Symmetric polynomial `Σ_{k : c_k = 1} e_k(x_1, ..., x_n)`, stored by
/// its level indicator so that large `n` stays cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricPoly {
    n: usize,
    levels: Vec<bool>,
}

impl SymmetricPoly {
    pub fn new(n: usize, mut levels: Vec<bool>) -> Self {
        levels.resize(n + 1, false);
        SymmetricPoly { n, levels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[bool] {
        &self.levels
    }

    pub fn has_level(&self, k: usize) -> bool {
        self.levels.get(k).copied().unwrap_or(false)
    }

    pub fn degree(&self) -> usize {
        self.levels.iter().rposition(|&c| c).unwrap_or(0)
    }

    /// `p̃(w) = Σ_k c_k C(w, k) mod 2`, evaluated with Lucas' rule.
    pub fn value_at_weight(&self, w: usize) -> bool {
        self.levels
            .iter()
            .enumerate()
            .filter(|&(k, &c)| c && k & w == k)
            .count()
            % 2
            == 1
    }

    pub fn profile(&self) -> SymmetricProfile {
        SymmetricProfile::from_fn(self.n, |w| self.value_at_weight(w))
    }

    /// Number of monomials in the expanded form.
    pub fn monomial_count(&self) -> BigInt {
        self.levels.iter().enumerate().filter(|(_, &c)| c).map(|(k, _)| binomial(self.n, k)).sum()
    }

    /// Expanded sparse form, refused above `limit` monomials.
    pub fn to_f2poly(&self, limit: usize) -> Result<F2Poly, SymmetricError> {
        let count = self.monomial_count();
        if count > BigInt::from(limit) {
            return Err(SymmetricError::TooLarge { count, limit });
        }
        let n = self.n as Var;
        let mut monomials = Vec::new();
        for (k, _) in self.levels.iter().enumerate().filter(|(_, &c)| c) {
            for_each_subset(self.n, k, &mut |vars| monomials.push(Monomial::new(vars.iter().copied())));
        }
        Ok(F2Poly::from_monomials(n, monomials)?)
    }
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[Var])) {
    fn go(start: Var, n: Var, k: usize, cur: &mut Vec<Var>, f: &mut impl FnMut(&[Var])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = (k - cur.len()) as Var;
        for v in start..=n + 1 - need {
            cur.push(v);
            go(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(1, n as Var, k, &mut Vec::with_capacity(k), f);
}

/// Level structure of `p`, checking that every degree level is either
/// complete or absent.
pub fn symmetric_poly_of(p: &F2Poly) -> Result<SymmetricPoly, SymmetricError> {
    let n = p.n() as usize;
    let mut counts = vec![0usize; n + 1];
    for m in p.monomials() {
        counts[m.degree()] += 1;
    }
    for (level, &present) in counts.iter().enumerate() {
        let total = binomial(n, level);
        if present != 0 && BigInt::from(present) != total {
            return Err(SymmetricError::NotSymmetric { level, present, total });
        }
    }
    Ok(SymmetricPoly::new(n, counts.iter().map(|&c| c > 0).collect()))
}

/// Weight profile of a symmetric polynomial.
pub fn symmetrize(p: &F2Poly) -> Result<SymmetricProfile, SymmetricError> {
    Ok(symmetric_poly_of(p)?.profile())
}

/// Symmetric polynomial of degree `< m` reproducing an `m`-periodic
/// profile.
///
/// Solves `Σ_{k ⊆ u} c_k = r(u) mod 2` for `u < m` by subset Möbius
/// inversion. Residues above `n` do not occur and are set to 0; the
/// levels they would produce exceed `n` and are dropped.
pub fn poly_from_profile(profile: &SymmetricProfile, m: usize) -> Result<SymmetricPoly, SymmetricError> {
    if !m.is_power_of_two() {
        return Err(SymmetricError::NotPowerOfTwo { m });
    }
    if !profile.is_periodic_mod(m) {
        return Err(SymmetricError::NotPeriodic { m });
    }
    let n = profile.n();
    let mut c: Vec<bool> = (0..m).map(|u| u <= n && profile.value(u)).collect();
    let mut bit = 1;
    while bit < m {
        for u in 0..m {
            if u & bit != 0 {
                c[u] ^= c[u ^ bit];
            }
        }
        bit *= 2;
    }
    c.truncate(n + 1);
    Ok(SymmetricPoly::new(n, c))
}

/// Level-`k` data of a symmetric {0,1}-valued function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricLevel {
    pub k: usize,
    /// The common coefficient `p̂(S)` for `|S| = k`.
    pub coefficient: Rational,
    /// `L_{1,k}(p) = C(n, k) |p̂([k])|`.
    pub level: Rational,
}

fn level_from_row(profile: &SymmetricProfile, k: usize, row: &[BigInt]) -> SymmetricLevel {
    let n = profile.n();
    let sum: BigInt = row.iter().zip(profile.values()).filter(|(_, &v)| v).map(|(x, _)| x).sum();
    let coefficient = Rational::new(sum, rational::pow2(n as u32));
    let level = Rational::from_integer(binomial(n, k)) * coefficient.abs();
    SymmetricLevel { k, coefficient, level }
}

/// `C(n, k) |p̂([k])|` and `p̂([k])`, in time polynomial in `n`.
pub fn symmetric_level_l1(profile: &SymmetricProfile, k: usize) -> Result<SymmetricLevel, SymmetricError> {
    let n = profile.n();
    if k > n {
        return Err(SymmetricError::LevelRange { n, k });
    }
    Ok(level_from_row(profile, k, &signed_binomial_product(k, n - k)))
}

/// All levels `0..=n`, sharing one Kravchuk table.
pub fn symmetric_levels(profile: &SymmetricProfile) -> Vec<SymmetricLevel> {
    let table = KravchukTable::new(profile.n());
    (0..=profile.n()).map(|k| level_from_row(profile, k, table.row(k))).collect()
}

/// Levels of the ±1 function `(-1)^p`, in the same shape the brute-force
/// path produces.
pub fn symmetric_pm_levels(profile: &SymmetricProfile) -> LevelL1Vector {
    let two = rational::int(2);
    let zo = symmetric_levels(profile);
    let bias = Rational::from_integer(1.into()) - &zo[0].coefficient * &two;
    let levels = zo
        .iter()
        .map(|l| if l.k == 0 { bias.abs() } else { &l.level * &two })
        .collect();
    LevelL1Vector::new(levels, bias)
}
