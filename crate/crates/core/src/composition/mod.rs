//! Disjoint compositions `h = f(g_1(x^1), ..., g_m(x^m))`.
//!
//! Functions are ±1-valued through `(-1)^p`. The outer polynomial has one
//! variable per inner function; inner `i` reads its own block of global
//! variables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::f2poly::{F2Poly, PolyError, Var};
use crate::spectrum::{check_cap, SpectrumError, TruthTable};

mod derivative;
mod theorem;
mod xor;

pub use derivative::{derivative_at, expected_restricted_coefficient, CompositionAnalysis};
pub use theorem::{
    composition_rhs, composition_simplified_rhs, fit_bound_profile, fit_single_profile, profile_holds_for,
    verify_composition_bound, BoundProfile,
    CompositionBoundReport, HypothesisStatus,
};
pub use xor::{dyadic_root_ceil, lambda, verify_xor_reduction, xor_choice_t, xor_power_level, XorReductionReport};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompositionError {
    #[error("outer function has {outer} inputs but {inners} inner functions were given")]
    ArityMismatch { outer: u32, inners: usize },
    #[error("block {block} has {got} variables, inner function expects {expected}")]
    BlockSize { block: usize, expected: u32, got: usize },
    #[error("global variable x{0} is used by two blocks")]
    BlockOverlap(Var),
    #[error("global variable x{var} exceeds the total arity {n}")]
    BlockRange { var: Var, n: u32 },
    #[error("|beta_{0}| exceeds 1")]
    BetaRange(usize),
    #[error("beta_{0} is not dyadic")]
    NonDyadic(usize),
    #[error("|beta_{0}| = 1 for an index in S; the restriction identity divides by 1 - |beta_i|")]
    DegenerateBeta(usize),
    #[error("beta has {got} entries, expected {expected}")]
    BetaLength { expected: usize, got: usize },
    #[error("{m} outer variables exceed the closure cap {cap}")]
    ClosureCap { m: u32, cap: u32 },
    #[error("the comparison against e fell inside the rational enclosure")]
    EnclosureUndecided,
    #[error("index out of range: {0}")]
    IndexRange(Var),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Outer `F2Poly` on `m` inputs and `m` inner functions on disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSpec {
    outer: F2Poly,
    inners: Vec<F2Poly>,
    blocks: Vec<Vec<Var>>,
    n: u32,
}

impl CompositionSpec {
    /// Blocks laid out consecutively: inner 1 on `x1..x_{ℓ_1}`, and so on.
    pub fn new(outer: F2Poly, inners: Vec<F2Poly>) -> Result<Self, CompositionError> {
        let mut next = 1;
        let blocks = inners
            .iter()
            .map(|g| {
                let block: Vec<Var> = (next..next + g.n()).collect();
                next += g.n();
                block
            })
            .collect();
        Self::with_blocks(outer, inners, blocks, next - 1)
    }

    /// Explicit block map: `blocks[i][j - 1]` is the global variable read
    /// as `x_j` by inner `i + 1`.
    pub fn with_blocks(outer: F2Poly, inners: Vec<F2Poly>, blocks: Vec<Vec<Var>>, n: u32) -> Result<Self, CompositionError> {
        if outer.n() as usize != inners.len() || blocks.len() != inners.len() {
            return Err(CompositionError::ArityMismatch { outer: outer.n(), inners: inners.len() });
        }
        let mut used = BTreeSet::new();
        for (i, (g, block)) in inners.iter().zip(&blocks).enumerate() {
            if block.len() != g.n() as usize {
                return Err(CompositionError::BlockSize { block: i + 1, expected: g.n(), got: block.len() });
            }
            for &v in block {
                if v == 0 || v > n {
                    return Err(CompositionError::BlockRange { var: v, n });
                }
                if !used.insert(v) {
                    return Err(CompositionError::BlockOverlap(v));
                }
            }
        }
        Ok(CompositionSpec { outer, inners, blocks, n })
    }

    /// Outer function given as a truth table, converted to ANF.
    pub fn from_table(outer: &TruthTable, inners: Vec<F2Poly>) -> Result<Self, CompositionError> {
        Self::new(outer.to_anf(), inners)
    }

    pub fn outer(&self) -> &F2Poly {
        &self.outer
    }

    pub fn inners(&self) -> &[F2Poly] {
        &self.inners
    }

    pub fn blocks(&self) -> &[Vec<Var>] {
        &self.blocks
    }

    /// Number of inner functions.
    pub fn m(&self) -> usize {
        self.inners.len()
    }

    pub fn total_arity(&self) -> u32 {
        self.n
    }

    /// `(i, j)` (both 1-based) for a global variable.
    pub fn locate(&self, v: Var) -> Option<(usize, Var)> {
        self.blocks.iter().enumerate().find_map(|(i, b)| {
            b.iter().position(|&x| x == v).map(|j| (i + 1, j as Var + 1))
        })
    }

    /// Inner `i` (1-based) in global variables.
    pub fn embedded_inner(&self, i: usize) -> F2Poly {
        let block = &self.blocks[i - 1];
        self.inners[i - 1]
            .relabel(self.n, |j| block[j as usize - 1])
            .expect("blocks lie within the total arity")
    }
}

fn disjoint_product(a: &F2Poly, b: &F2Poly) -> F2Poly {
    let mut out = F2Poly::zero(a.n());
    for x in a.monomials() {
        for y in b.monomials() {
            out.toggle(x.times(y));
        }
    }
    out
}

/// Substitutes the inner polynomials into the outer one.
pub fn compose(spec: &CompositionSpec, cap: u32) -> Result<F2Poly, CompositionError> {
    check_cap(spec.total_arity(), cap)?;
    let embedded: Vec<F2Poly> = (1..=spec.m()).map(|i| spec.embedded_inner(i)).collect();
    let mut h = F2Poly::zero(spec.total_arity());
    for m in spec.outer().monomials() {
        let mut term = F2Poly::one(spec.total_arity());
        for &y in m.vars() {
            term = disjoint_product(&term, &embedded[y as usize - 1]);
        }
        h = h.xor(&term);
    }
    Ok(h)
}

/// `S|_f` and the map `i ↦ S|_i`, for `S` in global variables.
pub fn project_set(spec: &CompositionSpec, s: &BTreeSet<Var>) -> Result<(BTreeSet<usize>, BTreeMap<usize, BTreeSet<Var>>), CompositionError> {
    let mut map: BTreeMap<usize, BTreeSet<Var>> = BTreeMap::new();
    for &v in s {
        let (i, j) = spec.locate(v).ok_or(CompositionError::IndexRange(v))?;
        map.entry(i).or_default().insert(j);
    }
    Ok((map.keys().copied().collect(), map))
}

/// Evaluates `h` pointwise through the inner and outer polynomials.
pub fn eval_composition(spec: &CompositionSpec, x: u64) -> bool {
    let mut y = 0u64;
    for (i, (g, block)) in spec.inners().iter().zip(spec.blocks()).enumerate() {
        let local = block.iter().enumerate().fold(0u64, |acc, (j, &v)| acc | ((x >> (v - 1)) & 1) << j);
        if g.eval_mask(local) {
            y |= 1 << i;
        }
    }
    spec.outer().eval_mask(y)
}

#[cfg(test)]
mod tests;
