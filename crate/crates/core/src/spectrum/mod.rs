//! Exact Fourier spectra of `f = (-1)^p`.
//!
//! A [`Spectrum`] stores `c[S] = 2^n * f̂(S)` for every subset `S`, indexed
//! by bitmask (bit `i - 1` set iff `x_i` is in `S`). Level norms and biases
//! are exact rationals.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::f2poly::{F2Poly, Restriction, Var, VarState};
use crate::rational::{self, Rational};

mod levels;
mod table;

pub use levels::{level_l1_profile, xor_power_level_l1, LevelL1Vector};
pub use table::{anf_from_truth_table, TruthTable};

/// Default brute-force cap on the number of variables.
pub const DEFAULT_CAP: u32 = 20;
/// Largest cap a caller may configure.
pub const MAX_CAP: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("{n} variables exceed the brute-force cap of {cap}; symmetric inputs can use the Kravchuk fast path")]
    CapExceeded { n: u32, cap: u32 },
    #[error("coefficient vector has length {got}, expected 2^{n}")]
    BadLength { n: u32, got: usize },
}

/// Integer-scaled spectrum `c[S] = 2^n * f̂(S)` of a ±1 function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum {
    n: u32,
    coeffs: Vec<i64>,
}

impl Spectrum {
    pub fn from_coeffs(n: u32, coeffs: Vec<i64>) -> Result<Self, SpectrumError> {
        if n > MAX_CAP {
            return Err(SpectrumError::CapExceeded { n, cap: MAX_CAP });
        }
        if coeffs.len() != 1usize << n {
            return Err(SpectrumError::BadLength { n, got: coeffs.len() });
        }
        Ok(Spectrum { n, coeffs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The scale `2^n`.
    pub fn scale(&self) -> BigInt {
        rational::pow2(self.n)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, mask: u64) -> i64 {
        self.coeffs[mask as usize]
    }

    /// `f̂(S)` as an exact rational.
    pub fn fourier(&self, mask: u64) -> Rational {
        Rational::new(BigInt::from(self.coefficient(mask)), self.scale())
    }

    /// `f̂(S)` for `S` given as a variable set.
    pub fn fourier_of(&self, s: &BTreeSet<Var>) -> Rational {
        self.fourier(set_mask(s))
    }

    /// Coefficient of the {0,1}-valued `p`: `p̂(S) = ([S = ∅] - f̂(S)) / 2`.
    pub fn zero_one_fourier(&self, mask: u64) -> Rational {
        let delta = if mask == 0 { Rational::one() } else { Rational::zero() };
        (delta - self.fourier(mask)) / rational::int(2)
    }

    /// `E[f] = f̂(∅)`.
    pub fn bias(&self) -> Rational {
        self.fourier(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (s as u64, c))
    }

    /// `Σ c[S]^2 = 4^n`.
    pub fn parseval_holds(&self) -> bool {
        let sum: i128 = self.coeffs.iter().map(|&c| i128::from(c) * i128::from(c)).sum();
        sum == 1i128 << (2 * self.n)
    }

    /// The ±1 truth table, recovered by the inverse transform.
    pub fn to_pm_table(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        walsh_hadamard(&mut v);
        let shift = self.n;
        v.iter_mut().for_each(|c| *c >>= shift);
        v
    }
}

/// In-place unnormalized Walsh-Hadamard transform. Applying it twice
/// multiplies by `len`.
pub fn walsh_hadamard(a: &mut [i64]) {
    assert!(a.len().is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*u, *v);
                *u = x + y;
                *v = x - y;
            }
        }
        h *= 2;
    }
}

pub fn set_mask(s: &BTreeSet<Var>) -> u64 {
    s.iter().fold(0, |m, &v| m | 1 << (v - 1))
}

pub fn mask_set(mask: u64) -> BTreeSet<Var> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn check_cap(n: u32, cap: u32) -> Result<(), SpectrumError> {
    let cap = cap.min(MAX_CAP);
    if n > cap {
        Err(SpectrumError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Spectrum of `(-1)^p` under the default cap.
pub fn compute_spectrum(p: &F2Poly) -> Result<Spectrum, SpectrumError> {
    compute_spectrum_with_cap(p, DEFAULT_CAP)
}

pub fn compute_spectrum_with_cap(p: &F2Poly, cap: u32) -> Result<Spectrum, SpectrumError> {
    check_cap(p.n(), cap)?;
    Ok(spectrum_of_table(&TruthTable::from_poly(p)))
}

pub fn spectrum_of_table(t: &TruthTable) -> Spectrum {
    spectrum_of_pm(t.n(), t.to_pm())
}

/// Spectrum of a ±1 table given as integers.
pub fn spectrum_of_pm(n: u32, mut values: Vec<i64>) -> Spectrum {
    assert_eq!(values.len(), 1usize << n);
    walsh_hadamard(&mut values);
    Spectrum { n, coeffs: values }
}

/// Shrinks `p` onto its occurring variables, in increasing order. Returns
/// the compacted polynomial and the original index of each new variable.
pub fn compact(p: &F2Poly) -> (F2Poly, Vec<Var>) {
    let occ: Vec<Var> = p.occurring_vars().into_iter().collect();
    let mut index = vec![0; p.n() as usize + 1];
    for (new, &old) in occ.iter().enumerate() {
        index[old as usize] = new as Var + 1;
    }
    let q = p
        .relabel(occ.len() as u32, |v| index[v as usize])
        .expect("relabelling onto occurring variables stays in range");
    (q, occ)
}

/// Exact `E[(-1)^p]`. Only the occurring variables count toward the cap.
pub fn exact_bias(p: &F2Poly, cap: u32) -> Result<Rational, SpectrumError> {
    let (q, _) = compact(p);
    check_cap(q.n(), cap)?;
    let t = TruthTable::from_poly(&q);
    let ones = t.count_ones();
    let zeros = t.len() - ones;
    Ok(Rational::new(
        BigInt::from(zeros) - BigInt::from(ones),
        rational::pow2(q.n()),
    ))
}

/// Exact `f̂(S)` for a single `S`, through the bias of `p + Σ_{i∈S} x_i`.
pub fn exact_coefficient(p: &F2Poly, s: &BTreeSet<Var>, cap: u32) -> Result<Rational, SpectrumError> {
    let ps = p.add_parity(s).expect("S lies within the ambient variables");
    exact_bias(&ps, cap)
}

/// `f̂_R(S)` for the restricted function on the free variables of `r`.
/// Zero when `S` contains a fixed variable.
pub fn restricted_coefficient(p: &F2Poly, r: &Restriction, s: &BTreeSet<Var>) -> Rational {
    if s.iter().any(|&v| r.state(v) != VarState::Free) {
        return Rational::zero();
    }
    let q = p.restrict(r).expect("restriction matches the arity");
    exact_coefficient(&q, s, MAX_CAP).expect("restriction keeps the arity within cap")
}

/// Exact `E_R[f̂_R(S)]` for every `S`, where `R` is a ρ-random restriction.
/// All `3^n` restriction outcomes are enumerated with their probabilities.
pub fn rho_averaged_coefficients(p: &F2Poly, rho: &Rational) -> Vec<Rational> {
    let n = p.n();
    assert!(n <= 12, "3^n enumeration is limited to n <= 12");
    let fixed = (Rational::one() - rho) / rational::int(2);
    let mut acc = vec![Rational::zero(); 1usize << n];
    for r in Restriction::enumerate_all(n as usize) {
        let free = r.free_count();
        let weight = rational::pow(rho, free) * rational::pow(&fixed, n as usize - free);
        if weight.is_zero() {
            continue;
        }
        let q = p.restrict(&r).expect("restriction matches the arity");
        let spec = spectrum_of_table(&TruthTable::from_poly(&q));
        // Fixed variables are absent from `q`, so their coefficients vanish.
        for (s, _) in spec.nonzero() {
            acc[s as usize] += &weight * spec.fourier(s);
        }
    }
    acc
}

#[cfg(test)]
mod tests;
