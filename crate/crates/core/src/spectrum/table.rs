use alloc::vec;
use alloc::vec::Vec;

use crate::f2poly::{F2Poly, Monomial};

/// Bit-packed truth table of a function `{0,1}^n -> {0,1}`.
///
/// Bit `x` holds `f(x)`, where bit `i - 1` of `x` is the value of `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

impl TruthTable {
    pub fn zeros(n: u32) -> Self {
        TruthTable { n, words: vec![0; word_count(n)] }
    }

    pub fn from_fn(n: u32, f: impl Fn(u64) -> bool) -> Self {
        let mut t = Self::zeros(n);
        for x in 0..(1u64 << n) {
            if f(x) {
                t.set(x, true);
            }
        }
        t
    }

    /// Truth table of `p`, via the subset zeta transform over GF(2).
    pub fn from_poly(p: &F2Poly) -> Self {
        let mut t = Self::zeros(p.n());
        for m in p.monomials() {
            t.flip(m.mask());
        }
        t.subset_xor_transform();
        t
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u64, v: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if v {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    fn flip(&mut self, x: u64) {
        self.words[(x >> 6) as usize] ^= 1 << (x & 63);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `+1` where the function is 0, `-1` where it is 1.
    pub fn to_pm(&self) -> Vec<i64> {
        (0..self.len()).map(|x| if self.get(x) { -1 } else { 1 }).collect()
    }

    /// `a[x] <- XOR_{y subset of x} a[y]`. Over GF(2) this map is its own
    /// inverse, so it converts ANF to values and values back to ANF.
    fn subset_xor_transform(&mut self) {
        let n = self.n;
        for i in 0..n.min(6) {
            let shift = 1u32 << i;
            for w in &mut self.words {
                *w ^= (*w & LOW[i as usize]) << shift;
            }
        }
        for i in 6..n {
            let stride = 1usize << (i - 6);
            for j in 0..self.words.len() {
                if j & stride == 0 {
                    self.words[j | stride] ^= self.words[j];
                }
            }
        }
        if n < 6 {
            self.words[0] &= (1u64 << (1u32 << n)) - 1;
        }
    }

    /// Algebraic normal form of the tabulated function.
    pub fn to_anf(&self) -> F2Poly {
        let mut t = self.clone();
        t.subset_xor_transform();
        let monomials = (0..t.len()).filter(|&x| t.get(x)).map(Monomial::from_mask);
        F2Poly::from_monomials(self.n, monomials).expect("masks lie within n")
    }
}

fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1usize << (n - 6)
    }
}

/// ANF of a tabulated function.
pub fn anf_from_truth_table(t: &TruthTable) -> F2Poly {
    t.to_anf()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::parse_poly_in;
    use proptest::prelude::*;

    #[test]
    fn small_tables() {
        let p = parse_poly_in("x1*x2 + x3", 3).unwrap();
        let t = TruthTable::from_poly(&p);
        for x in 0..8 {
            assert_eq!(t.get(x), p.eval_mask(x));
        }
        assert_eq!(t.count_ones(), 4);
        assert_eq!(TruthTable::from_poly(&F2Poly::one(0)).count_ones(), 1);
        assert_eq!(TruthTable::from_poly(&F2Poly::zero(2)).count_ones(), 0);
    }

    #[test]
    fn wide_tables_match_pointwise_eval() {
        let p = parse_poly_in("x1*x7*x9 + x2*x8 + x10 + x3*x4*x5*x6 + 1", 10).unwrap();
        let t = TruthTable::from_poly(&p);
        for x in 0..1024 {
            assert_eq!(t.get(x), p.eval_mask(x), "x = {x}");
        }
        assert_eq!(t.to_anf(), p);
    }

    proptest! {
        #[test]
        fn anf_round_trip(n in 0u32..9, seed in any::<u64>()) {
            let len = 1u64 << n;
            let t = TruthTable::from_fn(n, |x| (seed.rotate_left((x % 64) as u32) ^ x.wrapping_mul(0x9e37_79b9)) & 1 == 1);
            let p = t.to_anf();
            prop_assert_eq!(TruthTable::from_poly(&p), t.clone());
            for x in 0..len {
                prop_assert_eq!(p.eval_mask(x), t.get(x));
            }
        }
    }
}
