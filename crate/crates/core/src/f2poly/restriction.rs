use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyError, Var};
use crate::rational::{dyadic_exponent, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarState {
    Free,
    Fixed(bool),
}

/// Per-variable assignment of free / fixed-to-0 / fixed-to-1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Restriction {
    states: Vec<VarState>,
}

impl Restriction {
    /// The identity restriction on `n` variables.
    pub fn free(n: usize) -> Self {
        Restriction { states: vec![VarState::Free; n] }
    }

    pub fn from_states(states: Vec<VarState>) -> Self {
        Restriction { states }
    }

    pub fn n(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[VarState] {
        &self.states
    }

    pub fn state(&self, v: Var) -> VarState {
        self.states[v as usize - 1]
    }

    pub fn fix(&mut self, v: Var, bit: bool) {
        self.states[v as usize - 1] = VarState::Fixed(bit);
    }

    pub fn free_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == VarState::Free)
            .map(|(i, _)| i as Var + 1)
    }

    pub fn free_count(&self) -> usize {
        self.states.iter().filter(|s| **s == VarState::Free).count()
    }

    /// Restriction equivalent to applying `self` and then `later`.
    ///
    /// Returns `None` when `later` fixes a variable that `self` already
    /// fixed to the opposite value.
    pub fn merge(&self, later: &Restriction) -> Option<Restriction> {
        if self.n() != later.n() {
            return None;
        }
        let mut states = Vec::with_capacity(self.n());
        for (a, b) in self.states.iter().zip(&later.states) {
            states.push(match (*a, *b) {
                (VarState::Free, s) => s,
                (VarState::Fixed(x), VarState::Free) => VarState::Fixed(x),
                (VarState::Fixed(x), VarState::Fixed(y)) if x == y => VarState::Fixed(x),
                _ => return None,
            });
        }
        Some(Restriction { states })
    }

    /// Iterates all `3^n` restrictions on `n` variables, in base-3 order
    /// (digit 0 = free, 1 = fixed 0, 2 = fixed 1; `x_1` least significant).
    pub fn enumerate_all(n: usize) -> impl Iterator<Item = Restriction> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut states = Vec::with_capacity(n);
            for _ in 0..n {
                states.push(match code % 3 {
                    0 => VarState::Free,
                    1 => VarState::Fixed(false),
                    _ => VarState::Fixed(true),
                });
                code /= 3;
            }
            Restriction { states }
        })
    }
}

/// Samples a rho-random restriction: each variable independently stays free
/// with probability `rho`, otherwise it is fixed to a uniform bit.
///
/// `rho` must be dyadic so that the free/fixed decision is an exact uniform
/// draw from `0..2^k`. The same seed always yields the same restriction.
pub fn sample_rho_restriction(n: usize, rho: &Rational, seed: u64) -> Result<Restriction, PolyError> {
    if rho.is_negative() || rho > &Rational::one() {
        return Err(PolyError::InvalidRho);
    }
    let k = dyadic_exponent(rho).ok_or(PolyError::InvalidRho)?;
    if k > 63 {
        return Err(PolyError::InvalidRho);
    }
    let den = 1u64 << k;
    let num = rho.numer().to_u64().ok_or(PolyError::InvalidRho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states = Vec::with_capacity(n);
    for _ in 0..n {
        // `draw < num` has probability exactly num / den.
        let draw: u64 = if den == 1 { 0 } else { rng.random_range(0..den) };
        let free = draw < num;
        let bit: bool = rng.random();
        states.push(if free { VarState::Free } else { VarState::Fixed(bit) });
    }
    Ok(Restriction { states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::parse_poly;
    use crate::rational::frac;
    use proptest::prelude::*;

    #[test]
    fn rho_boundaries() {
        let all_free = sample_rho_restriction(10, &frac(1, 1), 3).unwrap();
        assert_eq!(all_free.free_count(), 10);
        let none_free = sample_rho_restriction(10, &frac(0, 1), 3).unwrap();
        assert_eq!(none_free.free_count(), 0);
    }

    #[test]
    fn rho_sampling_is_deterministic() {
        let a = sample_rho_restriction(8, &frac(1, 2), 42).unwrap();
        for _ in 0..5 {
            assert_eq!(sample_rho_restriction(8, &frac(1, 2), 42).unwrap(), a);
        }
    }

    #[test]
    fn rho_validation() {
        assert_eq!(sample_rho_restriction(3, &frac(3, 2), 0), Err(PolyError::InvalidRho));
        assert_eq!(sample_rho_restriction(3, &frac(-1, 2), 0), Err(PolyError::InvalidRho));
        assert_eq!(sample_rho_restriction(3, &frac(1, 3), 0), Err(PolyError::InvalidRho));
    }

    #[test]
    fn rho_frequency_is_plausible() {
        let mut free = 0usize;
        for seed in 0..200 {
            free += sample_rho_restriction(16, &frac(1, 4), seed).unwrap().free_count();
        }
        // 3200 draws at p = 1/4: mean 800, sd ~24.5.
        assert!((650..950).contains(&free), "free = {free}");
    }

    #[test]
    fn enumerate_all_counts() {
        assert_eq!(Restriction::enumerate_all(3).count(), 27);
        let distinct: alloc::collections::BTreeSet<_> =
            Restriction::enumerate_all(3).map(|r| alloc::format!("{:?}", r.states)).collect();
        assert_eq!(distinct.len(), 27);
    }

    #[test]
    fn merge_rejects_conflicts() {
        let mut a = Restriction::free(2);
        a.fix(1, true);
        let mut b = Restriction::free(2);
        b.fix(1, false);
        assert_eq!(a.merge(&b), None);
        let mut c = Restriction::free(2);
        c.fix(2, false);
        let m = a.merge(&c).unwrap();
        assert_eq!(m.states(), &[VarState::Fixed(true), VarState::Fixed(false)]);
    }

    fn arb_state() -> impl Strategy<Value = VarState> {
        prop_oneof![
            Just(VarState::Free),
            Just(VarState::Fixed(false)),
            Just(VarState::Fixed(true))
        ]
    }

    proptest! {
        #[test]
        fn restriction_composes_and_never_grows(
            ms in proptest::collection::vec(proptest::collection::btree_set(1u32..=6, 0..4), 0..8),
            r1 in proptest::collection::vec(arb_state(), 6),
            r2 in proptest::collection::vec(arb_state(), 6),
        ) {
            let p = crate::f2poly::F2Poly::from_monomials(
                6, ms.into_iter().map(crate::f2poly::Monomial::new)).unwrap();
            let a = Restriction::from_states(r1);
            let b = Restriction::from_states(r2);
            let pa = p.restrict(&a).unwrap();
            prop_assert!(pa.degree() <= p.degree());
            prop_assert!(pa.read() <= p.read());
            if let Some(m) = a.merge(&b) {
                prop_assert_eq!(pa.restrict(&b).unwrap(), p.restrict(&m).unwrap());
            }
        }
    }

    #[test]
    fn restrict_keeps_indexing() {
        let p = parse_poly("x1*x3 + x2").unwrap();
        let mut r = Restriction::free(3);
        r.fix(2, true);
        let q = p.restrict(&r).unwrap();
        assert_eq!(q.n(), 3);
        assert!(q.has_constant_term());
    }
}
