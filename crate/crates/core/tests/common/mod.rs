//! Seeded random instances shared by the integration suites.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_rational::BigRational;
use puiseux::series::exp;
use puiseux::{Coeff, Exponent, PuiseuxSeries, SeriesPolynomial};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type S = PuiseuxSeries<BigRational>;
pub type P = SeriesPolynomial<BigRational>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-5i64..=5);
    }
    BigRational::new(n.into(), rng.gen_range(1i64..=3).into())
}

/// A series with `1..=max_terms` terms, exponents in `[-2, 8]` with
/// denominators at most 4.
pub fn series(rng: &mut ChaCha8Rng, max_terms: usize) -> S {
    let n = rng.gen_range(1..=max_terms);
    let mut exps: Vec<Exponent> = Vec::new();
    while exps.len() < n {
        let e = exp(rng.gen_range(-8i64..=32), rng.gen_range(1i64..=4));
        if e >= exp(-2, 1) && e <= exp(8, 1) && !exps.contains(&e) {
            exps.push(e);
        }
    }
    S::exact(exps.into_iter().map(|e| (e, rational(rng))))
}

fn leading(s: &S) -> (Exponent, BigRational) {
    let (c, e) = s.leading_term().expect("nonzero root");
    (e, c)
}

/// Roots of a product of linear factors with pairwise distinct leading terms.
pub fn distinct_roots(rng: &mut ChaCha8Rng, max_terms: usize) -> Vec<S> {
    let degree = rng.gen_range(1..=5);
    let mut roots: Vec<S> = Vec::new();
    while roots.len() < degree {
        let r = series(rng, max_terms);
        if roots.iter().all(|o| leading(o) != leading(&r)) {
            roots.push(r);
        }
    }
    roots
}

/// The root the engine must return: minimal valuation, ties broken by the
/// branch order on leading coefficients.
pub fn minimal_root(roots: &[S]) -> S {
    roots
        .iter()
        .min_by(|a, b| {
            let (ea, ca) = leading(a);
            let (eb, cb) = leading(b);
            match ea.cmp(&eb) {
                Ordering::Equal => ca.branch_cmp(&cb),
                o => o,
            }
        })
        .cloned()
        .expect("at least one root")
}

pub fn first_terms(s: &S, d: usize) -> Vec<(Exponent, BigRational)> {
    s.terms().iter().take(d).cloned().collect()
}

/// Random polynomial with up to 5 coefficients of up to 4 terms each.
pub fn polynomial(rng: &mut ChaCha8Rng) -> P {
    let degree = rng.gen_range(1..=5);
    let mut coeffs: Vec<S> = (0..degree)
        .map(|_| {
            if rng.gen_bool(0.2) {
                S::zero()
            } else {
                series(rng, 4)
            }
        })
        .collect();
    coeffs.push(series(rng, 4));
    P::new(coeffs).expect("leading coefficient is nonzero")
}

/// `c^2 (1 + k x^a) - y^2` style factor whose roots `±c sqrt(1 + k x^a)` have
/// infinitely many terms.
pub fn sqrt_factor(rng: &mut ChaCha8Rng) -> P {
    let c = rational(rng);
    let k = rational(rng);
    let a = exp(rng.gen_range(1i64..=4), rng.gen_range(1i64..=2));
    let inner = S::exact([(exp(0, 1), c.clone() * c.clone()), (a, c.clone() * c * k)]);
    P::new(vec![-inner, S::zero(), S::one()]).expect("monic")
}

pub fn mul(a: &P, b: &P) -> P {
    let mut coeffs = vec![S::zero(); a.degree() + b.degree() + 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            coeffs[i + j] = &coeffs[i + j] + &(x * y);
        }
    }
    P::new(coeffs).expect("product of nonzero polynomials")
}
