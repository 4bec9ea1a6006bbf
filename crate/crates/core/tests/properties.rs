mod common;

use std::collections::BTreeMap;

use common::*;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use puiseux::polyring::squarefree_part;
use puiseux::series::exp;
use puiseux::{
    calculate_smallest_root, classic_newton_puiseux, verify_residual, Coeff, Exponent, Order,
};

fn instance(seed: u64, max_terms: usize) -> (Vec<S>, P) {
    let mut r = rng(seed);
    let roots = distinct_roots(&mut r, max_terms);
    let p = P::from_roots(&roots);
    (roots, p)
}

/// Dense product on the grid `x^{1/L}`.
fn dense_mul(a: &S, b: &S) -> S {
    let l: i64 = a
        .terms()
        .iter()
        .chain(b.terms())
        .fold(1, |acc, (e, _)| num_integer::lcm(acc, *e.denom()));
    let to_dense = |s: &S| -> (i64, Vec<BigRational>) {
        let idx: Vec<i64> = s
            .terms()
            .iter()
            .map(|(e, _)| (e * l).to_integer())
            .collect();
        let lo = *idx.iter().min().unwrap();
        let hi = *idx.iter().max().unwrap();
        let mut v = vec![<BigRational as Zero>::zero(); (hi - lo + 1) as usize];
        for (k, (_, c)) in idx.iter().zip(s.terms()) {
            v[(k - lo) as usize] = c.clone();
        }
        (lo, v)
    };
    if a.is_zero() || b.is_zero() {
        return S::zero();
    }
    let (la, va) = to_dense(a);
    let (lb, vb) = to_dense(b);
    let mut out = vec![<BigRational as Zero>::zero(); va.len() + vb.len() - 1];
    for (i, x) in va.iter().enumerate() {
        for (j, y) in vb.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    S::exact(
        out.into_iter()
            .enumerate()
            .map(|(k, c)| (Exponent::new(la + lb + k as i64, l), c)),
    )
}

fn dense_add(a: &S, b: &S) -> S {
    let mut m: BTreeMap<Exponent, BigRational> = BTreeMap::new();
    for (e, c) in a.terms().iter().chain(b.terms()) {
        *m.entry(*e).or_insert_with(<BigRational as Zero>::zero) += c;
    }
    S::exact(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_arithmetic_matches_dense(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = series(&mut r, 8);
        let b = series(&mut r, 8);
        prop_assert_eq!(&a * &b, dense_mul(&a, &b));
        prop_assert_eq!(&a + &b, dense_add(&a, &b));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn horizontal_shift_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = polynomial(&mut r);
        let c = series(&mut r, 3);
        prop_assert_eq!(p.shift_horizontal(&c).shift_horizontal(&-c), p);
    }

    #[test]
    fn vertical_shift_round_trip(seed in any::<u64>(), n in -8i64..8, d in 1i64..5) {
        let mut r = rng(seed);
        let p = polynomial(&mut r);
        let e = exp(n, d);
        prop_assert_eq!(p.shift_vertical(e).shift_vertical(-e), p.clear_common_monomial());
    }

    #[test]
    fn restriction_commutes_with_evaluation(seed in any::<u64>(), t in -4i64..4) {
        let mut r = rng(seed);
        let p = polynomial(&mut r);
        prop_assume!(p.coeffs().iter().all(|a| a.valuation() >= Order::Finite(Exponent::zero())));
        prop_assume!(!p.leading().valuation().is_infinite());
        let at_zero = p.evaluate(&S::constant(q(t)));
        match p.restrict_at_zero() {
            Ok(base) => prop_assert_eq!(base.eval(&q(t)), at_zero.coeff_at(Exponent::zero())),
            Err(_) => prop_assert!(p.coeffs().iter().all(|a| Zero::is_zero(&a.coeff_at(Exponent::zero())))),
        }
    }

    #[test]
    fn engine_reconstructs_minimal_root(seed in any::<u64>()) {
        let (roots, p) = instance(seed, 5);
        let expected = minimal_root(&roots);
        let out = calculate_smallest_root(&p, 4).unwrap();
        prop_assert_eq!(&out.terms, &first_terms(&expected, 4));
        prop_assert_eq!(out.exact, expected.terms().len() <= 4);
        prop_assert!(out.multiplicities.iter().all(|m| *m == 1));
    }

    #[test]
    fn residual_grows_until_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let roots = distinct_roots(&mut r, 5);
        let mut p = P::from_roots(&roots[..roots.len().min(3)]);
        if seed % 2 == 0 {
            p = mul(&p, &sqrt_factor(&mut r));
        }
        let mut previous = None;
        for d in 1..=5 {
            let out = calculate_smallest_root(&p, d).unwrap();
            let residual = verify_residual(&p, &out);
            if let Some(prev) = previous {
                prop_assert!(residual > prev, "d = {}: {:?} after {:?}", d, residual, prev);
            }
            if out.exact {
                prop_assert_eq!(residual, Order::Infinite);
                break;
            }
            previous = Some(residual);
        }
    }

    #[test]
    fn oracle_agrees_and_certifies(seed in any::<u64>()) {
        let (roots, p) = instance(seed, 5);
        let engine = calculate_smallest_root(&p, 4).unwrap();
        let oracle = classic_newton_puiseux(&p, 4).unwrap();
        prop_assert_eq!(oracle.total_multiplicity(), p.degree());
        prop_assert!(oracle.contains(&engine.terms));
        let non_negative = roots.iter().all(|s| s.valuation() >= Order::Finite(Exponent::zero()));
        for b in &oracle.branches {
            let last = b.expansion.terms.last().unwrap().0;
            if non_negative {
                prop_assert!(verify_residual(&p, &b.expansion) > Order::Finite(last));
            }
        }
    }

    #[test]
    fn float_mode_tracks_exact_mode(seed in any::<u64>()) {
        let (_, p) = instance(seed, 3);
        let exact = calculate_smallest_root(&p, 3).unwrap();
        let float = calculate_smallest_root(&p.map_coeffs(Complex64::from_rational), 3).unwrap();
        prop_assert_eq!(exact.terms.len(), float.terms.len());
        for ((ee, ce), (ef, cf)) in exact.terms.iter().zip(&float.terms) {
            prop_assert_eq!(ee, ef);
            prop_assert!((ce.to_complex() - cf).norm() < 1e-6, "{} vs {}", ce, cf);
        }
    }


    #[test]
    fn squarefree_part_keeps_roots(seed in any::<u64>()) {
        let (roots, _) = instance(seed, 3);
        let mut doubled = roots.clone();
        doubled.push(roots[0].clone());
        let p = P::from_roots(&doubled);
        let sf = squarefree_part(&p).unwrap();
        prop_assert_eq!(sf.degree(), roots.len());
        let expected = minimal_root(&roots);
        let out = calculate_smallest_root(&sf, 3).unwrap();
        prop_assert_eq!(&out.terms, &first_terms(&expected, 3));
        prop_assert!(out.multiplicities.iter().all(|m| *m == 1));
    }
}

#[test]
fn repeated_root_keeps_its_multiplicity() {
    let (roots, _) = instance(7, 3);
    let target = minimal_root(&roots);
    let mut with_double = roots.clone();
    with_double.push(target.clone());
    let out = calculate_smallest_root(&P::from_roots(&with_double), 4).unwrap();
    assert_eq!(out.terms, first_terms(&target, 4));
    assert!(out.exact);
    assert!(out.multiplicities.iter().all(|m| *m == 2));
}
