use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::f2poly::{parse_poly_in, random_read_delta_poly, sample_rho_restriction};
use crate::rational::{frac, int};

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

#[test]
fn parity_of_one_variable() {
    let s = compute_spectrum(&parse_poly_in("x1", 1).unwrap()).unwrap();
    assert_eq!(s.coeffs(), &[0, 2]);
}

#[test]
fn and_of_two() {
    let s = compute_spectrum(&parse_poly_in("x1*x2", 2).unwrap()).unwrap();
    assert_eq!(s.coeffs(), &[2, 2, 2, -2]);
    assert!(s.coeffs().iter().all(|c| c.abs() == 2));
}

#[test]
fn constant_function() {
    for n in 0..6 {
        let s = compute_spectrum(&F2Poly::zero(n)).unwrap();
        assert_eq!(s.coefficient(0), 1 << n);
        assert!(s.coeffs()[1..].iter().all(|&c| c == 0));
        let v = level_l1_profile(&s);
        assert_eq!(v.alpha, int(0));
        assert!(v.levels[1..].iter().all(Zero::is_zero));
    }
}

#[test]
fn and3_levels() {
    let v = level_l1_profile(&compute_spectrum(&parse_poly_in("x1*x2*x3", 3).unwrap()).unwrap());
    for k in 1..=3 {
        assert_eq!(v.levels[k], frac(binom(3, k as u64), 4));
    }
    let zo = v.zero_one_levels();
    assert_eq!(&zo[1..], &[frac(3, 8), frac(3, 8), frac(1, 8)]);
    assert_eq!(zo[0], frac(1, 8));
    assert_eq!(v.alpha, frac(1, 8));
}

#[test]
fn full_parity_levels() {
    for n in 1..8u32 {
        let p = F2Poly::parity(n, 1..=n).unwrap();
        let v = level_l1_profile(&compute_spectrum(&p).unwrap());
        for k in 0..=n as usize {
            assert_eq!(v.levels[k], int(i64::from(k == n as usize)));
        }
    }
}

#[test]
fn cap_is_enforced() {
    let p = F2Poly::zero(21);
    assert_eq!(compute_spectrum(&p), Err(SpectrumError::CapExceeded { n: 21, cap: 20 }));
    assert!(compute_spectrum_with_cap(&F2Poly::zero(10), 8).is_err());
    assert!(compute_spectrum_with_cap(&F2Poly::zero(25), 99).is_err());
}

#[test]
fn xor_power_examples() {
    let parity = level_l1_profile(&compute_spectrum(&parse_poly_in("x1", 1).unwrap()).unwrap());
    assert_eq!(xor_power_level_l1(&parity, 2).levels, [int(0), int(0), int(1)]);
    let and2 = level_l1_profile(&compute_spectrum(&parse_poly_in("x1*x2", 2).unwrap()).unwrap());
    assert_eq!(xor_power_level_l1(&and2, 1), and2);
    let brute = level_l1_profile(&compute_spectrum(&parse_poly_in("x1*x2 + x3*x4", 4).unwrap()).unwrap());
    assert_eq!(xor_power_level_l1(&and2, 2), brute);
}

#[test]
fn xor_power_matches_brute_force_on_random_polys() {
    for seed in 0..40u64 {
        let n = 1 + (seed % 4) as u32;
        let p = random_read_delta_poly(n, 1 + (seed % n as u64) as u32, 2, seed).unwrap();
        let v = level_l1_profile(&compute_spectrum(&p).unwrap());
        for t in 1..=(12 / n as usize).min(4) {
            let mut big = F2Poly::zero(n * t as u32);
            for c in 0..t as u32 {
                big = big.xor(&p.relabel(n * t as u32, |x| x + c * n).unwrap());
            }
            let brute = level_l1_profile(&compute_spectrum(&big).unwrap());
            assert_eq!(xor_power_level_l1(&v, t), brute, "{p} t={t}");
        }
    }
}

#[test]
fn restriction_averaging_small() {
    let p = parse_poly_in("x1*x2 + x2*x3*x4 + x1", 4).unwrap();
    let s = compute_spectrum(&p).unwrap();
    for rho in [frac(1, 2), frac(1, 4), int(1), int(0)] {
        let avg = rho_averaged_coefficients(&p, &rho);
        for mask in 0..16u64 {
            let expect = crate::rational::pow(&rho, mask.count_ones() as usize) * s.fourier(mask);
            assert_eq!(avg[mask as usize], expect, "rho={rho} S={mask:b}");
        }
    }
}

#[test]
fn restricted_coefficient_agrees_with_sampling_api() {
    let p = parse_poly_in("x1*x2 + x3", 3).unwrap();
    let r = sample_rho_restriction(3, &frac(1, 2), 5).unwrap();
    let s: BTreeSet<Var> = r.free_vars().collect();
    let direct = restricted_coefficient(&p, &r, &s);
    let q = p.restrict(&r).unwrap();
    assert_eq!(direct, compute_spectrum(&q).unwrap().fourier_of(&s));
}

#[test]
fn compact_and_exact_bias() {
    let p = parse_poly_in("x3*x9 + x30", 30).unwrap();
    let (q, occ) = compact(&p);
    assert_eq!(occ, [3, 9, 30]);
    assert_eq!(q.to_string(), "x3 + x1*x2");
    assert_eq!(exact_bias(&p, 20).unwrap(), int(0));
    let and = parse_poly_in("x5*x40", 40).unwrap();
    assert_eq!(exact_bias(&and, 20).unwrap(), frac(1, 2));
}

#[test]
fn pm_table_round_trip() {
    let p = parse_poly_in("x1*x2*x3 + x2*x4 + 1", 4).unwrap();
    let t = TruthTable::from_poly(&p);
    assert_eq!(compute_spectrum(&p).unwrap().to_pm_table(), t.to_pm());
}

fn arb_poly(max_n: u32) -> impl Strategy<Value = F2Poly> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u64..(1u64 << n), 0..12).prop_map(move |masks| {
            F2Poly::from_monomials(n, masks.into_iter().map(crate::f2poly::Monomial::from_mask)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn parseval(p in arb_poly(10)) {
        prop_assert!(compute_spectrum(&p).unwrap().parseval_holds());
    }

    #[test]
    fn transform_is_an_involution_up_to_scale(vals in proptest::collection::vec(-50i64..50, 1..7usize).prop_flat_map(|v| {
        let n = v.len();
        proptest::collection::vec(-50i64..50, 1usize << n)
    })) {
        let mut a = vals.clone();
        walsh_hadamard(&mut a);
        walsh_hadamard(&mut a);
        let len = vals.len() as i64;
        prop_assert_eq!(a, vals.iter().map(|x| x * len).collect::<Vec<_>>());
    }

    #[test]
    fn bias_identity(p in arb_poly(8)) {
        let s = compute_spectrum(&p).unwrap();
        for mask in 0..(1u64 << p.n()) {
            let set = mask_set(mask);
            let ps = p.add_parity(&set).unwrap();
            let ones = (0..(1u64 << p.n())).filter(|&x| ps.eval_mask(x)).count() as i64;
            let direct = frac((1i64 << p.n()) - 2 * ones, 1i64 << p.n());
            prop_assert_eq!(s.fourier(mask), direct);
        }
    }

    #[test]
    fn zero_one_bridge(p in arb_poly(8)) {
        let s = compute_spectrum(&p).unwrap();
        let n = p.n();
        let v = level_l1_profile(&s);
        let zo = v.zero_one_levels();
        for k in 1..=n as usize {
            let mut direct = Rational::zero();
            for mask in (0..(1u64 << n)).filter(|m| m.count_ones() as usize == k) {
                let sum: i64 = (0..(1u64 << n))
                    .filter(|&x| p.eval_mask(x))
                    .map(|x| if (x & mask).count_ones() % 2 == 0 { 1 } else { -1 })
                    .sum();
                direct += frac(sum.abs(), 1i64 << n);
            }
            prop_assert_eq!(&zo[k], &direct);
            prop_assert_eq!(&v.levels[k], &(direct * int(2)));
        }
        let alpha = &v.alpha;
        prop_assert!(*alpha >= int(0) && *alpha <= frac(1, 2));
        prop_assert!(v.levels[0] <= int(1));
    }
}
