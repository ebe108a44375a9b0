use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SymmetricError;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (i, c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        row = next;
    }
    row
}

/// Coefficients of `(1 - x)^a (1 + x)^b`, lowest degree first.
pub fn signed_binomial_product(a: usize, b: usize) -> Vec<BigInt> {
    let mut poly = binomial_row(b);
    for _ in 0..a {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        poly = next;
    }
    poly
}

/// `K(n, k, w) = Σ_{|x| = w} (-1)^{x_1 + ... + x_k}`, the coefficient of
/// `x^w` in `(1 - x)^k (1 + x)^(n - k)`.
pub fn kravchuk(n: usize, k: usize, w: usize) -> Result<BigInt, SymmetricError> {
    if k > n || w > n {
        return Err(SymmetricError::KravchukRange { n, k, w });
    }
    Ok(signed_binomial_product(k, n - k).swap_remove(w))
}

/// All values `K(n, k, w)` for `0 <= k, w <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KravchukTable {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl KravchukTable {
    pub fn new(n: usize) -> Self {
        let rows = (0..=n).map(|k| signed_binomial_product(k, n - k)).collect();
        KravchukTable { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, w: usize) -> &BigInt {
        &self.rows[k][w]
    }

    /// `K(n, k, ·)` over all weights.
    pub fn row(&self, k: usize) -> &[BigInt] {
        &self.rows[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_traits::Signed;

    fn by_sum(n: usize, k: usize, w: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for j in 0..=k.min(w) {
            let term = binomial(k, j) * binomial(n - k, w - j);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn by_enumeration(n: usize, k: usize, w: usize) -> i64 {
        let first_k = (1u64 << k) - 1;
        (0..1u64 << n)
            .filter(|x| x.count_ones() as usize == w)
            .map(|x| if (x & first_k).count_ones().is_multiple_of(2) { 1 } else { -1 })
            .sum()
    }

    #[test]
    fn examples() {
        assert_eq!(kravchuk(6, 1, 2).unwrap(), BigInt::from(5));
        assert_eq!(kravchuk(4, 1, 2).unwrap(), BigInt::zero());
        for n in 0..10 {
            for w in 0..=n {
                assert_eq!(kravchuk(n, 0, w).unwrap(), binomial(n, w));
                assert_eq!(kravchuk(n, w, 0).unwrap(), BigInt::one());
            }
        }
        assert!(kravchuk(3, 4, 0).is_err());
        assert!(kravchuk(3, 0, 4).is_err());
    }

    #[test]
    fn matches_enumeration() {
        for n in 0..=10 {
            for k in 0..=n {
                for w in 0..=n {
                    assert_eq!(kravchuk(n, k, w).unwrap(), BigInt::from(by_enumeration(n, k, w)));
                }
            }
        }
    }

    #[test]
    fn table_matches_alternating_sum() {
        for n in [0, 1, 7, 20, 33] {
            let t = KravchukTable::new(n);
            for k in 0..=n {
                for w in 0..=n {
                    assert_eq!(t.get(k, w), &by_sum(n, k, w));
                    assert!(t.get(k, w).abs() <= binomial(n, w));
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial_row(5), [1, 5, 10, 10, 5, 1].map(BigInt::from));
    }
}
