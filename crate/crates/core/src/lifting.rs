//! Golden lifting: the next root coefficients from the lowest-order terms.
//!
//! Suppose `s` roots of `p` have positive valuation, the smallest of which is
//! `e`, and every other root has valuation at most 0. Keep only the leading
//! term `b_i x^{k_i}` of each coefficient `a_0 … a_s`. Substituting
//! `y = β x^e` into that reduced polynomial, the terms of minimal x-power form
//! a polynomial in `β` whose nonzero roots are exactly the leading
//! coefficients of the valuation-`e` roots. The remaining `s - s⁺` roots of
//! that polynomial are zero and stand for the roots of valuation `> e`.

use num_traits::Zero;

use crate::baseroots::{self, RootSet};
use crate::error::{Error, Result};
use crate::newton::NewtonPolygon;
use crate::polyring::{BasePolynomial, SeriesPolynomial};
use crate::scalar::Coeff;
use crate::series::{Exponent, Order, PuiseuxSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPolynomial<C> {
    /// Leading term `(b_i, k_i)` of `a_i` for `i = 0 … s`, `None` where `a_i = 0`.
    pub cut_terms: Vec<Option<(C, Exponent)>>,
    pub s: usize,
    /// Valuation of the smallest positive-valuation roots.
    pub e: Exponent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedRoot<C> {
    pub value: C,
    pub multiplicity: usize,
    pub is_zero_root: bool,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::HypothesisViolation(msg.into())
}

pub fn extract_reduced<C: Coeff>(
    p: &SeriesPolynomial<C>,
    s: usize,
) -> Result<ReducedPolynomial<C>> {
    let d = p.degree();
    if s == 0 || s >= d {
        return Err(violation(format!(
            "positive-valuation root count {s} must lie in 1..{d}"
        )));
    }
    if p.coeffs()
        .iter()
        .any(|a| a.valuation() < Order::Finite(Exponent::zero()))
    {
        return Err(violation("coefficients must have non-negative valuation"));
    }
    let cut_terms: Vec<Option<(C, Exponent)>> =
        (0..=s).map(|i| p.coeff(i).leading_term().ok()).collect();
    let Some((_, k_s)) = cut_terms[s].clone() else {
        return Err(violation(format!("coefficient a_{s} vanishes")));
    };
    let e = NewtonPolygon::build(p)?
        .min_nonzero_slope()
        .map_err(|_| violation("no root of positive valuation"))?;

    let weight = |i: usize, k: Exponent| k + e * Exponent::from_integer(i as i64);
    let minimum = cut_terms
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.as_ref().map(|(_, k)| weight(i, *k)))
        .min()
        .expect("a_s is present");
    if weight(s, k_s) != minimum {
        return Err(violation(format!(
            "a_{s} is not on the Newton polygon edge of slope {e}"
        )));
    }
    for i in s + 1..=d {
        if let Order::Finite(v) = p.coeff(i).valuation() {
            if weight(i, v) <= minimum {
                return Err(violation(format!(
                    "a_{i} with i > s reaches the minimal order after substitution"
                )));
            }
        }
    }
    Ok(ReducedPolynomial { cut_terms, s, e })
}

impl<C: Coeff> ReducedPolynomial<C> {
    /// The polynomial in `β` left after substituting `y = β x^e` and keeping
    /// only terms of minimal x-power.
    pub fn beta_polynomial(&self) -> BasePolynomial<C> {
        let orders: Vec<Option<Exponent>> = self
            .cut_terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.as_ref()
                    .map(|(_, k)| *k + self.e * Exponent::from_integer(i as i64))
            })
            .collect();
        let minimum = orders.iter().flatten().min().copied();
        let coeffs = self
            .cut_terms
            .iter()
            .zip(&orders)
            .map(|(t, o)| match (t, o) {
                (Some((b, _)), Some(o)) if Some(*o) == minimum => b.clone(),
                _ => C::zero(),
            })
            .collect();
        BasePolynomial::new(coeffs).expect("a_s survives the substitution")
    }

    /// The reduced polynomial itself, made monic, as a series polynomial with
    /// monomial coefficients.
    pub fn to_series_polynomial(&self) -> Result<SeriesPolynomial<C>> {
        let coeffs = self
            .cut_terms
            .iter()
            .map(|t| match t {
                Some((b, k)) => PuiseuxSeries::monomial(b.clone(), *k),
                None => PuiseuxSeries::zero(),
            })
            .collect();
        SeriesPolynomial::new(coeffs)?.make_monic(Exponent::zero())
    }
}

pub fn solve_reduced<C: Coeff>(r: &ReducedPolynomial<C>) -> Result<Vec<ReducedRoot<C>>> {
    let RootSet { roots } = baseroots::roots_with_multiplicity(&r.beta_polynomial())?;
    Ok(roots
        .into_iter()
        .map(|(value, multiplicity)| ReducedRoot {
            is_zero_root: value.is_zero(),
            value,
            multiplicity,
        })
        .collect())
}

/// Number of roots attaining the minimal positive valuation.
pub fn s_plus<C: Coeff>(roots: &[ReducedRoot<C>]) -> usize {
    roots
        .iter()
        .filter(|r| !r.is_zero_root)
        .map(|r| r.multiplicity)
        .sum()
}
