use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{project_set, CompositionError, CompositionSpec};
use crate::f2poly::Var;
use crate::rational::{self, Rational};
use crate::spectrum::{check_cap, compute_spectrum_with_cap, set_mask, Spectrum};

fn check_beta(m: usize, beta: &[Rational]) -> Result<(), CompositionError> {
    if beta.len() != m {
        return Err(CompositionError::BetaLength { expected: m, got: beta.len() });
    }
    for (i, b) in beta.iter().enumerate() {
        if b.abs() > Rational::one() {
            return Err(CompositionError::BetaRange(i + 1));
        }
    }
    Ok(())
}

/// `∂_J f(β) = Σ_{T ⊇ J} f̂(T) β^{T \ J}`, with `J` as a bitmask.
pub fn derivative_at(f: &Spectrum, j: u64, beta: &[Rational]) -> Result<Rational, CompositionError> {
    let m = f.n() as usize;
    check_beta(m, beta)?;
    let free = ((1u64 << m) - 1) & !j;
    let mut acc = Rational::zero();
    let mut sub = free;
    loop {
        let c = f.coefficient(j | sub);
        if c != 0 {
            let mut term = f.fourier(j | sub);
            for i in (0..m).filter(|i| sub >> i & 1 == 1) {
                term *= &beta[i];
            }
            acc += term;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Ok(acc)
}

/// Exact `E_{R_β}[f̂_{R_β}(S)]`, where coordinate `i` is fixed to
/// `sgn(β_i)` with probability `|β_i|` and left free otherwise.
///
/// Each fix/free pattern is weighted by its probability and the restricted
/// coefficient is averaged directly from the ±1 truth table.
pub fn expected_restricted_coefficient(f: &Spectrum, beta: &[Rational], s: u64) -> Result<Rational, CompositionError> {
    let m = f.n() as usize;
    check_beta(m, beta)?;
    for (i, b) in beta.iter().enumerate() {
        if !rational::is_dyadic(b) {
            return Err(CompositionError::NonDyadic(i + 1));
        }
        if s >> i & 1 == 1 && b.abs() == Rational::one() {
            return Err(CompositionError::DegenerateBeta(i + 1));
        }
    }
    let table = f.to_pm_table();
    let size = 1u64 << m;
    // Bit i set in `neg` when sgn(β_i) = -1, which is input bit 1.
    let neg = beta.iter().enumerate().fold(0u64, |acc, (i, b)| if b.is_negative() { acc | 1 << i } else { acc });
    let fixable = beta.iter().enumerate().fold(0u64, |acc, (i, b)| if b.is_zero() { acc } else { acc | 1 << i });
    let mut total = Rational::zero();
    let mut fixed = fixable;
    loop {
        if fixed & s == 0 {
            let mut weight = Rational::one();
            for (i, b) in beta.iter().enumerate() {
                if fixed >> i & 1 == 1 {
                    weight *= b.abs();
                } else {
                    weight *= Rational::one() - b.abs();
                }
            }
            let mut sum = 0i64;
            for y in 0..size {
                let z = (y & !fixed) | (neg & fixed);
                let chi = if (y & s).count_ones().is_multiple_of(2) { 1 } else { -1 };
                sum += table[z as usize] * chi;
            }
            total += weight * Rational::new(sum.into(), rational::pow2(m as u32));
        }
        if fixed == 0 {
            break;
        }
        fixed = (fixed - 1) & fixable;
    }
    Ok(total)
}

/// Spectra of the outer and inner functions and the inner biases `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionAnalysis {
    pub spec: CompositionSpec,
    pub outer: Spectrum,
    pub inners: Vec<Spectrum>,
    pub beta: Vec<Rational>,
}

impl CompositionAnalysis {
    pub fn new(spec: &CompositionSpec, cap: u32) -> Result<Self, CompositionError> {
        check_cap(spec.m() as u32, cap)?;
        let outer = compute_spectrum_with_cap(spec.outer(), cap)?;
        let inners = spec
            .inners()
            .iter()
            .map(|g| compute_spectrum_with_cap(g, cap))
            .collect::<Result<Vec<_>, _>>()?;
        let beta = inners.iter().map(Spectrum::bias).collect();
        Ok(CompositionAnalysis { spec: spec.clone(), outer, inners, beta })
    }

    fn pieces(&self, s: &BTreeSet<Var>) -> Result<(u64, Rational), CompositionError> {
        let (sf, parts) = project_set(&self.spec, s)?;
        let mut inner = Rational::one();
        for (&i, local) in &parts {
            inner *= self.inners[i - 1].fourier(set_mask(local));
        }
        let j = sf.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1));
        Ok((j, inner))
    }

    /// `ĥ(S) = Π_{i ∈ S|_f} ĝ_i(S|_i) · ∂_{S|_f} f(β)`.
    pub fn coefficient(&self, s: &BTreeSet<Var>) -> Result<Rational, CompositionError> {
        let (j, inner) = self.pieces(s)?;
        if inner.is_zero() {
            return Ok(inner);
        }
        Ok(inner * derivative_at(&self.outer, j, &self.beta)?)
    }

    /// The same coefficient through `Π 1/(1 - |β_i|) · E_{R_β}[f̂_{R_β}(S|_f)]`.
    pub fn coefficient_via_restrictions(&self, s: &BTreeSet<Var>) -> Result<Rational, CompositionError> {
        let (j, inner) = self.pieces(s)?;
        let e = expected_restricted_coefficient(&self.outer, &self.beta, j)?;
        let mut scale = Rational::one();
        for i in (0..self.spec.m()).filter(|i| j >> i & 1 == 1) {
            scale /= Rational::one() - self.beta[i].abs();
        }
        Ok(inner * scale * e)
    }

    /// `E[h] = f(β)`.
    pub fn bias(&self) -> Result<Rational, CompositionError> {
        derivative_at(&self.outer, 0, &self.beta)
    }

    /// `L_{1,K}(h)` summed from the coefficient formula.
    pub fn level_l1(&self, k: usize) -> Result<Rational, CompositionError> {
        let n = self.spec.total_arity();
        let mut acc = Rational::zero();
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize == k {
                let s: BTreeSet<Var> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                acc += self.coefficient(&s)?.abs();
            }
        }
        Ok(acc)
    }
}
