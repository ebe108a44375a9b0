//! Exact Fourier-growth analysis of polynomials over GF(2).
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs: polynomials are immutable after construction,
//! spectra are stored as integers scaled by `2^n`, and every level norm,
//! bias and bound is an exact rational. Floating point appears only in
//! display-oriented fields (the `bounds` evaluators, the exp-form corollaries
//! and the Kravchuk diagnostic ratio).
//!
//! Module map:
//!
//! * [`f2poly`]: sparse algebraic normal form, parsing, evaluation,
//!   restrictions, dependency graphs and strata.
//! * [`spectrum`]: truth tables, the Walsh-Hadamard transform, level-k L1
//!   norms and XOR powers.
//! * [`symmetric`]: Kravchuk polynomials and the symmetric fast path.
//! * [`readfew`]: spread selections, block decompositions and bias /
//!   coefficient certificates for read-few polynomials.
//! * [`composition`]: disjoint compositions, derivatives, random
//!   restrictions `R_beta` and the composition / XOR-reduction checks.
//! * [`bounds`]: constant-1 evaluators for seed-length and correlation
//!   formulas.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod composition;
pub mod f2poly;
pub mod rational;
pub mod readfew;
pub mod spectrum;
pub mod symmetric;

pub use f2poly::{parse_poly, parse_poly_in, F2Poly, Monomial, Restriction, Var, VarState};
pub use rational::Rational;
pub use spectrum::{compute_spectrum, level_l1_profile, LevelL1Vector, Spectrum};
