use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Spectrum;
use crate::rational::{self, Rational};

/// Exact level norms `L_{1,k}(f)` for `k = 0..=n` of a ±1 function, with
/// its signed bias `E[f]` and `alpha = (1 - |E[f]|) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelL1Vector {
    pub levels: Vec<Rational>,
    pub bias: Rational,
    pub alpha: Rational,
}

impl LevelL1Vector {
    pub fn new(levels: Vec<Rational>, bias: Rational) -> Self {
        let alpha = alpha_of(&bias);
        LevelL1Vector { levels, bias, alpha }
    }

    /// Number of variables, i.e. the top level index.
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    /// `L_{1,k}`, zero above the top level.
    pub fn level(&self, k: usize) -> Rational {
        self.levels.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Level norms of the {0,1}-valued `p` with `f = (-1)^p`: entry 0 is
    /// `E[p] = (1 - E[f]) / 2` and every higher level is halved.
    pub fn zero_one_levels(&self) -> Vec<Rational> {
        let two = rational::int(2);
        self.levels
            .iter()
            .enumerate()
            .map(|(k, l)| if k == 0 { (Rational::one() - &self.bias) / &two } else { l / &two })
            .collect()
    }

    /// `min(Pr[p = 1], Pr[p = 0])`, which equals `alpha`.
    pub fn min_side_probability(&self) -> Rational {
        self.alpha.clone()
    }
}

pub fn alpha_of(bias: &Rational) -> Rational {
    (Rational::one() - bias.abs()) / rational::int(2)
}

/// Per-level sums of `|c[S]| / 2^n`.
pub fn level_l1_profile(s: &Spectrum) -> LevelL1Vector {
    let n = s.n() as usize;
    let mut sums = vec![0i128; n + 1];
    for (mask, &c) in s.coeffs().iter().enumerate() {
        sums[mask.count_ones() as usize] += i128::from(c.abs());
    }
    let scale = s.scale();
    let levels = sums
        .into_iter()
        .map(|x| Rational::new(BigInt::from(x), scale.clone()))
        .collect();
    LevelL1Vector::new(levels, s.bias())
}

/// Level norms of the XOR of `t` copies of `f` on disjoint variables.
///
/// The spectrum of a disjoint XOR is the tensor power of the spectrum, so
/// absolute values multiply and the level vector is the `t`-fold
/// convolution of `v` with itself.
pub fn xor_power_level_l1(v: &LevelL1Vector, t: usize) -> LevelL1Vector {
    assert!(t >= 1, "t must be at least 1");
    let mut acc = v.levels.clone();
    for _ in 1..t {
        acc = convolve(&acc, &v.levels);
    }
    assert_eq!(acc.len(), t * v.n() + 1);
    LevelL1Vector::new(acc, rational::pow(&v.bias, t))
}

fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
