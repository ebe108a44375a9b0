//! Exact rational helpers shared by every module.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for every exact quantity in the crate.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^-k` as an exact rational.
pub fn inv_pow2(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}

pub fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

/// `x^e` for a non-negative integer exponent.
pub fn pow(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// True when the reduced denominator is a power of two.
pub fn is_dyadic(x: &Rational) -> bool {
    let den = x.denom();
    den.is_positive() && (den & (den - BigInt::one())).is_zero()
}

/// Exponent `k` of a dyadic denominator `2^k`, if `x` is dyadic.
pub fn dyadic_exponent(x: &Rational) -> Option<u32> {
    if !is_dyadic(x) {
        return None;
    }
    Some(x.denom().bits() as u32 - 1)
}

pub fn to_f64(x: &Rational) -> f64 {
    // Direct conversion loses range for huge numerators; scale through the
    // bit lengths instead.
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        Rational::new(x.numer().clone(), x.denom() << (shift as usize))
    } else {
        Rational::new(x.numer() << ((-shift) as usize), x.denom().clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * libm::pow(2.0, shift as f64)
}

/// Serialized form used by every report: always `num/den`.
pub fn to_ratio_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a plain integer.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

/// Smallest dyadic `j / 2^bits` that is `>= x` (for `x >= 0`).
pub fn dyadic_ceil(x: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Rational enclosure `[lo, hi]` of Euler's number, width `2e-20`.
pub fn euler_enclosure() -> (Rational, Rational) {
    let digits: BigInt = "271828182845904523536".parse().expect("literal");
    let scale = BigInt::from(10u32).pow(20);
    let lo = Rational::new(&digits - BigInt::one(), scale.clone());
    let hi = Rational::new(&digits + BigInt::one(), scale);
    (lo, hi)
}

/// Outcome of comparing an exact quantity against `c * e` using the
/// enclosure of `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnclosureOrdering {
    /// `value <= c * e` is certain.
    Below,
    /// `value > c * e` is certain.
    Above,
    /// The enclosure is too coarse to decide.
    Undecided,
}

/// Compares `value` against `c * e` for a non-negative coefficient `c`.
pub fn compare_with_e_multiple(value: &Rational, c: &Rational) -> EnclosureOrdering {
    let (lo, hi) = euler_enclosure();
    let low = c * lo;
    let high = c * hi;
    if value <= &low {
        EnclosureOrdering::Below
    } else if value.cmp(&high) == Ordering::Greater {
        EnclosureOrdering::Above
    } else {
        EnclosureOrdering::Undecided
    }
}
