use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{F2Poly, Monomial, PolyError, Var};

/// Seeded random polynomial with degree at most `d` and read at most `delta`.
///
/// A target monomial count is drawn uniformly from `1..=floor(delta*n/d)`.
/// Each step draws a degree uniformly from `1..=d` (capped by the number of
/// variables that still have read budget) and a uniform subset of that size
/// among those variables. Draws that duplicate an existing monomial are
/// discarded. Sampling stops at the target count, when no variable has
/// budget left, or after a bounded number of discarded draws.
pub fn random_read_delta_poly(n: u32, d: u32, delta: u32, seed: u64) -> Result<F2Poly, PolyError> {
    if n == 0 || d == 0 || delta == 0 {
        return Err(PolyError::Infeasible("n, d and delta must all be at least 1"));
    }
    if d > n {
        return Err(PolyError::Infeasible("degree exceeds the number of variables"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_count = ((u64::from(delta) * u64::from(n)) / u64::from(d)).max(1);
    let target = rng.random_range(1..=max_count) as usize;
    let mut budget = vec![delta; n as usize];
    let mut p = F2Poly::zero(n);
    let mut discards = 0usize;
    while p.len() < target && discards < 4 * target + 64 {
        let available: Vec<Var> =
            (1..=n).filter(|&v| budget[v as usize - 1] > 0).collect();
        if available.is_empty() {
            break;
        }
        let deg = (rng.random_range(1..=d) as usize).min(available.len());
        let picked = sample(&mut rng, available.len(), deg);
        let m = Monomial::new(picked.iter().map(|i| available[i]));
        if p.contains(&m) {
            discards += 1;
            continue;
        }
        for &v in m.vars() {
            budget[v as usize - 1] -= 1;
        }
        p.toggle(m);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn degree_one_is_linear() {
        let p = random_read_delta_poly(4, 1, 1, 9).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(p.monomials().all(|m| m.degree() == 1));
    }

    #[test]
    fn deterministic() {
        let a = random_read_delta_poly(12, 3, 2, 77).unwrap();
        let b = random_read_delta_poly(12, 3, 2, 77).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert_ne!(a, random_read_delta_poly(12, 3, 2, 78).unwrap());
    }

    #[test]
    fn respects_contract() {
        for seed in 0..500u64 {
            let n = 1 + (seed % 20) as u32;
            let d = 1 + (seed / 20 % 5) as u32;
            let delta = 1 + (seed / 100 % 3) as u32;
            if d > n {
                assert!(random_read_delta_poly(n, d, delta, seed).is_err());
                continue;
            }
            let p = random_read_delta_poly(n, d, delta, seed).unwrap();
            assert!(p.degree() <= d as usize);
            assert!(p.read() <= delta as usize);
            assert!(!p.has_constant_term());
        }
    }

    #[test]
    fn infeasible_parameters() {
        assert!(random_read_delta_poly(3, 4, 1, 0).is_err());
        assert!(random_read_delta_poly(0, 1, 1, 0).is_err());
        assert!(random_read_delta_poly(3, 1, 0, 0).is_err());
    }
}
