use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::f2poly::parse_poly_in;
use crate::rational::{frac, int, Rational};
use crate::spectrum::{compute_spectrum, level_l1_profile, mask_set, xor_power_level_l1, TruthTable};

fn poly(s: &str, n: u32) -> F2Poly {
    parse_poly_in(s, n).unwrap()
}

fn random_fn(rng: &mut ChaCha8Rng, n: u32) -> F2Poly {
    let bits: u64 = rng.random();
    TruthTable::from_fn(n, |x| bits >> x & 1 == 1).to_anf()
}

fn random_spec(seed: u64) -> CompositionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(1..=3u32);
    let outer = random_fn(&mut rng, m);
    let inners = (0..m).map(|_| {
        let l = rng.random_range(1..=3u32);
        random_fn(&mut rng, l)
    }).collect();
    CompositionSpec::new(outer, inners).unwrap()
}

#[test]
fn xor_outer_composes_to_sum() {
    let spec = CompositionSpec::new(poly("x1+x2", 2), vec![poly("x1*x2", 2), poly("x1*x2", 2)]).unwrap();
    assert_eq!(compose(&spec, 20).unwrap(), poly("x1*x2+x3*x4", 4));
}

#[test]
fn identity_outer_reindexes() {
    let g = poly("x1*x2+x3", 3);
    let spec = CompositionSpec::new(poly("x1", 1), vec![g.clone()]).unwrap();
    assert_eq!(compose(&spec, 20).unwrap(), g);
    let spec = CompositionSpec::with_blocks(poly("x1", 1), vec![g], vec![vec![5, 2, 4]], 5).unwrap();
    assert_eq!(compose(&spec, 20).unwrap(), poly("x5*x2+x4", 5));
}

#[test]
fn overlapping_blocks_rejected() {
    let g = poly("x1*x2", 2);
    let err = CompositionSpec::with_blocks(poly("x1+x2", 2), vec![g.clone(), g], vec![vec![1, 2], vec![2, 3]], 3);
    assert_eq!(err, Err(CompositionError::BlockOverlap(2)));
}

#[test]
fn compose_matches_pointwise_evaluation() {
    for seed in 0..200 {
        let spec = random_spec(seed);
        let h = compose(&spec, 20).unwrap();
        for x in 0..(1u64 << spec.total_arity()) {
            assert_eq!(h.eval_mask(x), eval_composition(&spec, x), "seed {seed}");
        }
    }
}

#[test]
fn project_set_example() {
    let g = poly("x1", 3);
    let spec = CompositionSpec::new(poly("x1", 3), vec![g.clone(), g.clone(), g]).unwrap();
    let s: BTreeSet<Var> = [2, 3, 7].into_iter().collect();
    let (sf, parts) = project_set(&spec, &s).unwrap();
    assert_eq!(sf, [1, 3].into_iter().collect());
    assert_eq!(parts[&1], [2, 3].into_iter().collect());
    assert_eq!(parts[&3], [1].into_iter().collect());
    assert_eq!(parts.values().map(BTreeSet::len).sum::<usize>(), s.len());
    let (sf, parts) = project_set(&spec, &BTreeSet::new()).unwrap();
    assert!(sf.is_empty() && parts.is_empty());
}

#[test]
fn derivative_examples() {
    let f = compute_spectrum(&poly("x1*x2+x3", 3)).unwrap();
    let zero = vec![Rational::zero(); 3];
    for j in 0..8 {
        assert_eq!(derivative_at(&f, j, &zero).unwrap(), f.fourier(j));
    }
    // β = +1 everywhere is the all-zero input.
    let ones = vec![Rational::one(); 3];
    assert_eq!(derivative_at(&f, 0, &ones).unwrap(), int(1));
    let g = compute_spectrum(&poly("x1*x2+x1", 2)).unwrap();
    let value = if g.to_pm_table()[0] == 1 { int(1) } else { int(-1) };
    assert_eq!(derivative_at(&g, 0, &[int(1), int(1)]).unwrap(), value);
    let parity = compute_spectrum(&poly("x1+x2", 2)).unwrap();
    assert_eq!(derivative_at(&parity, 0b01, &[Rational::zero(), frac(1, 2)]).unwrap(), frac(1, 2));
    assert_eq!(derivative_at(&parity, 0b01, &[int(2), int(0)]), Err(CompositionError::BetaRange(1)));
}

#[test]
fn derivative_matches_multilinear_extension() {
    // f(β) from the ±1 table: Σ_x f(x) Π (1 + β_i y_i) / 2.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let grid = [frac(-3, 4), frac(-1, 2), int(0), frac(1, 2), frac(3, 4), int(1)];
    for _ in 0..50 {
        let m = rng.random_range(1..=4u32);
        let f = compute_spectrum(&random_fn(&mut rng, m)).unwrap();
        let beta: Vec<Rational> = (0..m).map(|_| grid[rng.random_range(0..grid.len())].clone()).collect();
        let table = f.to_pm_table();
        let mut expect = Rational::zero();
        for (x, &v) in table.iter().enumerate() {
            let mut w = int(v);
            for (i, b) in beta.iter().enumerate() {
                let y = if x >> i & 1 == 0 { int(1) } else { int(-1) };
                w *= (Rational::one() + b * y) / int(2);
            }
            expect += w;
        }
        assert_eq!(derivative_at(&f, 0, &beta).unwrap(), expect);
    }
}

#[test]
fn restriction_identity_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let grid = [frac(-3, 4), frac(-1, 2), int(0), frac(1, 2), frac(3, 4)];
    for _ in 0..100 {
        let m = rng.random_range(1..=4u32);
        let f = compute_spectrum(&random_fn(&mut rng, m)).unwrap();
        let beta: Vec<Rational> = (0..m).map(|_| grid[rng.random_range(0..grid.len())].clone()).collect();
        for s in 0..(1u64 << m) {
            let mut lhs = derivative_at(&f, s, &beta).unwrap();
            for i in (0..m as usize).filter(|i| s >> i & 1 == 1) {
                lhs *= Rational::one() - beta[i].abs();
            }
            assert_eq!(lhs, expected_restricted_coefficient(&f, &beta, s).unwrap());
        }
        let zero = vec![Rational::zero(); m as usize];
        assert_eq!(expected_restricted_coefficient(&f, &zero, 1).unwrap(), f.fourier(1));
    }
}

#[test]
fn restriction_identity_edge_cases() {
    let f = compute_spectrum(&poly("x1*x2", 2)).unwrap();
    let beta = [frac(1, 2), frac(-1, 4)];
    assert_eq!(expected_restricted_coefficient(&f, &beta, 0).unwrap(), derivative_at(&f, 0, &beta).unwrap());
    assert_eq!(expected_restricted_coefficient(&f, &[int(1), int(0)], 1), Err(CompositionError::DegenerateBeta(1)));
    assert_eq!(expected_restricted_coefficient(&f, &[frac(1, 3), int(0)], 2), Err(CompositionError::NonDyadic(1)));
}

#[test]
fn and_under_xor_example() {
    let spec = CompositionSpec::new(poly("x1+x2", 2), vec![poly("x1*x2", 2), poly("x1*x2", 2)]).unwrap();
    let a = CompositionAnalysis::new(&spec, 20).unwrap();
    let s: BTreeSet<Var> = [1].into_iter().collect();
    assert_eq!(a.coefficient(&s).unwrap(), frac(1, 4));
    let brute = compute_spectrum(&compose(&spec, 20).unwrap()).unwrap();
    assert_eq!(brute.fourier(1), frac(1, 4));
    assert_eq!(a.coefficient(&BTreeSet::new()).unwrap(), a.bias().unwrap());
}

#[test]
fn coefficient_formula_matches_brute_force() {
    for seed in 0..300 {
        let spec = random_spec(seed);
        let a = CompositionAnalysis::new(&spec, 20).unwrap();
        let brute = compute_spectrum(&compose(&spec, 20).unwrap()).unwrap();
        for mask in 0..(1u64 << spec.total_arity()) {
            let s = mask_set(mask);
            assert_eq!(a.coefficient(&s).unwrap(), brute.fourier(mask), "seed {seed} mask {mask:b}");
            let via = a.coefficient_via_restrictions(&s);
            if let Ok(v) = via {
                assert_eq!(v, brute.fourier(mask));
            }
        }
    }
}

#[test]
fn parity_outer_tensorizes() {
    let g = poly("x1*x2+x3", 3);
    let spec = CompositionSpec::new(poly("x1+x2+x3", 3), vec![g.clone(), g.clone(), g.clone()]).unwrap();
    let a = CompositionAnalysis::new(&spec, 20).unwrap();
    let gv = level_l1_profile(&compute_spectrum(&g).unwrap());
    let power = xor_power_level_l1(&gv, 3);
    for k in 0..=9 {
        assert_eq!(a.level_l1(k).unwrap(), power.level(k));
    }
}

#[test]
fn balanced_identical_inners_multiply_level_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let balanced = [poly("x1+x2", 2), poly("x1*x2+x3", 3), poly("x1", 1), poly("x1*x2+x1*x3+x2*x3", 3)];
    for _ in 0..40 {
        let m = rng.random_range(1..=3u32);
        let f = random_fn(&mut rng, m);
        let g = balanced[rng.random_range(0..balanced.len())].clone();
        assert!(compute_spectrum(&g).unwrap().bias().is_zero());
        let spec = CompositionSpec::new(f.clone(), vec![g.clone(); m as usize]).unwrap();
        let h = level_l1_profile(&compute_spectrum(&compose(&spec, 20).unwrap()).unwrap());
        let lf = level_l1_profile(&compute_spectrum(&f).unwrap()).level(1);
        let lg = level_l1_profile(&compute_spectrum(&g).unwrap()).level(1);
        assert_eq!(h.level(1), lf * lg);
    }
}

#[test]
fn parity_profile_fit() {
    let p = fit_bound_profile(&poly("x1+x2", 2), 2, &int(1), 8).unwrap();
    assert_eq!(p.a, int(2));
    let zero = fit_bound_profile(&F2Poly::zero(2), 3, &int(1), 8).unwrap();
    assert_eq!(zero.a, int(0));
    assert!(zero.binding.is_none());
    assert_eq!(fit_bound_profile(&F2Poly::zero(9), 1, &int(1), 8), Err(CompositionError::ClosureCap { m: 9, cap: 8 }));
}

#[test]
fn larger_b_never_increases_a() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = rng.random_range(1..=4u32);
        let f = random_fn(&mut rng, m);
        let mut last: Option<Rational> = None;
        for b in [frac(1, 2), int(1), frac(3, 2), int(2), int(4)] {
            let a = fit_bound_profile(&f, 3, &b, 8).unwrap().a;
            if let Some(prev) = &last {
                assert!(a <= *prev);
            }
            last = Some(a);
        }
    }
}

#[test]
fn simplified_rhs_dominates_when_applicable() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let r = |rng: &mut ChaCha8Rng| frac(rng.random_range(1..=40i64), rng.random_range(1..=8i64));
        let outer = BoundProfile { a: r(&mut rng), b: r(&mut rng), k_max: 4, binding: None };
        let inner = BoundProfile { a: r(&mut rng), b: r(&mut rng), k_max: 4, binding: None };
        let alpha = frac(rng.random_range(0..=4i64), 8);
        for k in 1..=4 {
            let full = composition_rhs(&alpha, &outer, &inner, k);
            let simple = composition_simplified_rhs(&alpha, &outer, &inner, k);
            if k == 1 {
                assert_eq!(full, simple);
            } else if &inner.a * &outer.b >= int(2) {
                assert!(full <= simple);
            }
        }
    }
}

#[test]
fn composition_bound_on_small_corpus() {
    let b_grid = [int(1), int(2)];
    let mut checked = 0;
    for seed in 0..60 {
        let spec = random_spec(seed);
        for b in &b_grid {
            for k in 1..=3 {
                let outer = fit_bound_profile(spec.outer(), k, b, 8).unwrap();
                let mut inner = BoundProfile { a: int(0), b: b.clone(), k_max: k, binding: None };
                for g in spec.inners() {
                    let fit = fit_single_profile(g, k, b, 20).unwrap();
                    if fit.a > inner.a {
                        inner.a = fit.a;
                    }
                }
                let report = verify_composition_bound(&spec, k, &outer, &inner, 20, 8).unwrap();
                assert!(report.hypotheses.all());
                assert_eq!(report.pass, Some(true), "seed {seed} k {k}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 360);
}

#[test]
fn xor_power_level_matches_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let n = rng.random_range(1..=4u32);
        let v = level_l1_profile(&compute_spectrum(&random_fn(&mut rng, n)).unwrap());
        for t in 1..=4 {
            let full = xor_power_level_l1(&v, t);
            for k in 0..=(t * n as usize) {
                assert_eq!(xor_power_level(&v, t, k), full.level(k));
            }
        }
    }
}

#[test]
fn xor_t_choice() {
    assert_eq!(xor_choice_t(&frac(1, 4)).unwrap(), 2);
    assert_eq!(xor_choice_t(&frac(1, 2)).unwrap(), 1);
    assert_eq!(xor_choice_t(&frac(2, 5)).unwrap(), 1);
    for den in [8i64, 16, 64, 256, 1024] {
        let alpha = frac(1, den);
        let t = xor_choice_t(&alpha).unwrap();
        let star = 1.0 / -libm::log(1.0 - 2.0 / den as f64);
        assert_eq!(t, libm::ceil(star) as usize);
    }
}

#[test]
fn lambda_peaks_at_t_star() {
    for alpha in [0.01, 0.05, 0.1, 0.15, 0.18] {
        let star = 1.0 / -libm::log(1.0 - 2.0 * alpha);
        let mut t = 0.05;
        let mut prev = lambda(t, alpha, 1.5, 2);
        while t < 4.0 * star {
            t += 0.05;
            let cur = lambda(t, alpha, 1.5, 2);
            if t <= star {
                assert!(cur >= prev);
            } else if t - 0.05 >= star {
                assert!(cur <= prev);
            }
            prev = cur;
        }
    }
}

#[test]
fn dyadic_root_ceiling() {
    assert_eq!(dyadic_root_ceil(&int(4), 2, 4), int(2));
    assert_eq!(dyadic_root_ceil(&int(2), 2, 2), frac(3, 2));
    let b = dyadic_root_ceil(&frac(7, 3), 3, 16);
    assert!(crate::rational::pow(&b, 3) >= frac(7, 3));
    assert!(crate::rational::pow(&(&b - frac(1, 65536)), 3) < frac(7, 3));
}

#[test]
fn xor_reduction_examples() {
    let constant = verify_xor_reduction(&F2Poly::one(2), 1, None, 20).unwrap();
    assert!(constant.trivial);
    assert_eq!(constant.pass, Some(true));
    let and2 = verify_xor_reduction(&poly("x1*x2", 2), 1, None, 20).unwrap();
    assert_eq!(and2.alpha, frac(1, 4));
    assert_eq!(and2.t, 2);
    assert!(and2.chain_holds && and2.hypothesis_holds);
    assert_eq!(and2.pass, Some(true));
    let small_b = verify_xor_reduction(&poly("x1*x2", 2), 1, Some(&frac(1, 8)), 20).unwrap();
    assert!(!small_b.hypothesis_holds);
    assert_eq!(small_b.pass, None);
}

#[test]
fn xor_reduction_on_random_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..100 {
        let n = rng.random_range(1..=5u32);
        let f = random_fn(&mut rng, n);
        for k in 1..=n as usize {
            let r = verify_xor_reduction(&f, k, None, 20).unwrap();
            assert!(r.chain_holds);
            assert_ne!(r.pass, Some(false));
        }
    }
}
