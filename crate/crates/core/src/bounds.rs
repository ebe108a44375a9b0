//! Numeric evaluators for PRG seed lengths and the correlation bound.
//!
//! Every hidden constant is set to 1; results carry [`CONSTANT_ONE`] as a
//! label. Logarithms are base 2 and `polylog(x) = (log₂ x)²`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::rational::{self, Rational};
use crate::symmetric::binomial;

pub const CONSTANT_ONE: &str = "(constant-1 convention)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Framework {
    /// Fourier growth `L_1(a, b)` at every level.
    Chhl,
    /// A bound `t` on level 2 only.
    Chlt,
    /// `L_{1,k} ≤ b^k` for one `k ≥ 3`.
    Cglss,
}

impl Framework {
    pub fn name(self) -> &'static str {
        match self {
            Framework::Chhl => "chhl",
            Framework::Chlt => "chlt",
            Framework::Cglss => "cglss",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "chhl" => Some(Framework::Chhl),
            "chlt" => Some(Framework::Chlt),
            "cglss" => Some(Framework::Cglss),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedLengthQuery {
    pub framework: Framework,
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub k: u32,
    pub n: f64,
    pub eps: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("n must be at least 2, got {0}")]
    SmallN(f64),
    #[error("eps must lie in (0, 1), got {0}")]
    EpsRange(f64),
    #[error("k must be at least 3 for this framework, got {0}")]
    SmallK(u32),
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("level k = {k} outside 1..={n}")]
    LevelRange { n: u32, k: u32 },
    #[error("the level norm must be non-negative")]
    NegativeNorm,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedLength {
    pub value: f64,
    /// The `o(1)` in the exponent was replaced by 0.
    pub exponent_o1_dropped: bool,
    pub label: &'static str,
}

fn log2(x: f64) -> f64 {
    libm::log2(x)
}

fn polylog(x: f64) -> f64 {
    let l = log2(x);
    l * l
}

fn positive(name: &'static str, value: f64) -> Result<(), BoundsError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(BoundsError::NonPositive { name, value })
    }
}

pub fn prg_seed_length(q: &SeedLengthQuery) -> Result<SeedLength, BoundsError> {
    if !(q.n >= 2.0) {
        return Err(BoundsError::SmallN(q.n));
    }
    if !(q.eps > 0.0 && q.eps < 1.0) {
        return Err(BoundsError::EpsRange(q.eps));
    }
    let (value, dropped) = match q.framework {
        Framework::Chhl => {
            positive("a", q.a)?;
            positive("b", q.b)?;
            let v = q.b * q.b * log2(q.n / q.eps) * (log2(log2(q.n)) + log2(q.a / q.eps));
            (v, false)
        }
        Framework::Chlt => {
            positive("t", q.t)?;
            let r = q.t / q.eps;
            (r * r * polylog(q.n), true)
        }
        Framework::Cglss => {
            if q.k < 3 {
                return Err(BoundsError::SmallK(q.k));
            }
            positive("b", q.b)?;
            let j = f64::from(q.k - 2);
            let v = libm::pow(q.b, 2.0 + 4.0 / j) * f64::from(q.k) * polylog(q.n / q.eps) / libm::pow(q.eps, 2.0 / j);
            (v, false)
        }
    };
    Ok(SeedLength { value, exponent_o1_dropped: dropped, label: CONSTANT_ONE })
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::NAN));
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift as usize;
    libm::log(top.to_f64().unwrap_or(f64::NAN)) + shift as f64 * core::f64::consts::LN_2
}

/// `1/2 + e^k · L / (2 √C(n, k))`.
pub fn correlation_upper_bound(n: u32, k: u32, l1k: &Rational) -> Result<f64, BoundsError> {
    if k == 0 || k > n {
        return Err(BoundsError::LevelRange { n, k });
    }
    if l1k.is_negative() {
        return Err(BoundsError::NegativeNorm);
    }
    let l = rational::to_f64(l1k);
    if l == 0.0 {
        return Ok(0.5);
    }
    let c = binomial(n as usize, k as usize);
    let log_term = f64::from(k) + libm::log(l) - 0.5 * ln_big(&c) - core::f64::consts::LN_2;
    Ok(0.5 + libm::exp(log_term))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn query(framework: Framework) -> SeedLengthQuery {
        SeedLengthQuery { framework, a: 1.0, b: 1.0, t: 1.0, k: 3, n: 2.0, eps: 0.5 }
    }

    #[test]
    fn chhl_plug_in() {
        let s = prg_seed_length(&query(Framework::Chhl)).unwrap();
        // log 4 · (log log 2 + log 2) = 2 · (0 + 1)
        assert!((s.value - 2.0).abs() < 1e-12);
        assert_eq!(s.label, CONSTANT_ONE);
        assert!(!s.exponent_o1_dropped);
    }

    #[test]
    fn chlt_rejects_eps_one_and_flags_exponent() {
        let q = SeedLengthQuery { eps: 1.0, ..query(Framework::Chlt) };
        assert_eq!(prg_seed_length(&q), Err(BoundsError::EpsRange(1.0)));
        let q = SeedLengthQuery { n: 16.0, t: 2.0, ..query(Framework::Chlt) };
        let s = prg_seed_length(&q).unwrap();
        assert!((s.value - 16.0 * 16.0).abs() < 1e-9);
        assert!(s.exponent_o1_dropped);
    }

    #[test]
    fn cglss_needs_k_three() {
        let q = SeedLengthQuery { k: 2, ..query(Framework::Cglss) };
        assert_eq!(prg_seed_length(&q), Err(BoundsError::SmallK(2)));
        assert_eq!(prg_seed_length(&SeedLengthQuery { n: 1.0, ..query(Framework::Chhl) }), Err(BoundsError::SmallN(1.0)));
    }

    #[test]
    fn cglss_approaches_quadratic_in_b() {
        let base = SeedLengthQuery { framework: Framework::Cglss, a: 1.0, b: 4.0, t: 1.0, k: 3, n: 1024.0, eps: 0.01 };
        let limit = base.b * base.b * polylog(base.n / base.eps);
        let mut prev = f64::INFINITY;
        for k in 3..200 {
            let v = prg_seed_length(&SeedLengthQuery { k, ..base }).unwrap().value / f64::from(k);
            assert!(v < prev);
            assert!(v > limit);
            prev = v;
        }
        assert!(prev / limit < 1.2);
    }

    #[test]
    fn seed_lengths_monotone_in_parameters() {
        let base = SeedLengthQuery { framework: Framework::Chhl, a: 2.0, b: 2.0, t: 2.0, k: 4, n: 256.0, eps: 0.1 };
        for fw in [Framework::Chhl, Framework::Chlt, Framework::Cglss] {
            let mut prev = 0.0;
            for i in 1..20 {
                let x = f64::from(i);
                let v = prg_seed_length(&SeedLengthQuery { framework: fw, b: x, t: x, ..base }).unwrap().value;
                assert!(v > prev);
                prev = v;
            }
            let mut prev = 0.0;
            for i in 1..20 {
                let v = prg_seed_length(&SeedLengthQuery { framework: fw, n: 256.0 * f64::from(i), ..base }).unwrap().value;
                assert!(v > prev);
                prev = v;
            }
        }
    }

    #[test]
    fn correlation_examples() {
        assert_eq!(correlation_upper_bound(10, 2, &int(0)).unwrap(), 0.5);
        let full = correlation_upper_bound(5, 5, &frac(1, 3)).unwrap();
        let e5 = libm::exp(5.0);
        assert!((full - (0.5 + e5 / 6.0)).abs() < 1e-9);
        assert_eq!(correlation_upper_bound(3, 4, &int(1)), Err(BoundsError::LevelRange { n: 3, k: 4 }));
    }

    #[test]
    fn correlation_level_two_scales_like_d_squared_over_n() {
        let d = 3i64;
        for n in [100u32, 1000, 10000] {
            let v = correlation_upper_bound(n, 2, &int(d * d)).unwrap();
            let c = f64::from(n) * f64::from(n - 1) / 2.0;
            let expect = 0.5 + libm::exp(2.0) * (d * d) as f64 / (2.0 * libm::sqrt(c));
            assert!((v - expect).abs() < 1e-12);
            assert!((v - 0.5) * f64::from(n) < 50.0);
        }
    }

    #[test]
    fn correlation_monotone_in_norm_and_large_n() {
        let mut prev = 0.0;
        for i in 0..50 {
            let v = correlation_upper_bound(4000, 10, &int(i)).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(correlation_upper_bound(4000, 300, &int(1)).unwrap().is_finite());
    }
}
