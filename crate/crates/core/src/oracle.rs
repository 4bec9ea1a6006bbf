//! Classic Newton–Puiseux recursion, kept separate from the lifting code so
//! the two can check each other.
//!
//! For every edge of slope `e` the characteristic polynomial is read from the
//! coefficients lying on that edge; each of its roots `c` yields the
//! substitution `y = x^e (c + y')` and the recursion continues on the edges of
//! positive slope. All branches are returned.

use num_traits::Zero;

use crate::baseroots::roots_with_multiplicity;
use crate::engine::RootExpansion;
use crate::error::{Error, Result};
use crate::newton::{NewtonPolygon, Segment};
use crate::polyring::{BasePolynomial, SeriesPolynomial};
use crate::scalar::Coeff;
use crate::series::{Exponent, Order, PuiseuxSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleBranch<C> {
    pub expansion: RootExpansion<C>,
    /// Number of roots sharing this expansion.
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleExpansion<C> {
    pub branches: Vec<OracleBranch<C>>,
}

impl<C: Coeff> OracleExpansion<C> {
    pub fn total_multiplicity(&self) -> usize {
        self.branches.iter().map(|b| b.multiplicity).sum()
    }

    /// Branches whose leading exponent is the smallest one present. A branch
    /// with no terms is the zero root and only counts when nothing else exists.
    pub fn minimal_valuation_branches(&self) -> Vec<&OracleBranch<C>> {
        let lowest = self
            .branches
            .iter()
            .filter_map(|b| b.expansion.terms.first().map(|t| t.0))
            .min();
        match lowest {
            Some(v) => self
                .branches
                .iter()
                .filter(|b| b.expansion.terms.first().map(|t| t.0) == Some(v))
                .collect(),
            None => self.branches.iter().collect(),
        }
    }

    /// Whether some minimal-valuation branch agrees with `terms` exactly
    /// (up to [`Coeff::approx_eq`] in float mode).
    pub fn contains(&self, terms: &[(Exponent, C)]) -> bool {
        self.minimal_valuation_branches().iter().any(|b| {
            b.expansion.terms.len() == terms.len()
                && b.expansion
                    .terms
                    .iter()
                    .zip(terms)
                    .all(|(a, t)| a.0 == t.0 && a.1.approx_eq(&t.1))
        })
    }
}

pub fn classic_newton_puiseux<C: Coeff>(
    p: &SeriesPolynomial<C>,
    d: usize,
) -> Result<OracleExpansion<C>> {
    if d == 0 {
        return Err(Error::InvalidPrecision);
    }
    if p.degree() == 0 {
        return Err(Error::DegeneratePolynomial(
            "polynomial has degree 0 in y".into(),
        ));
    }
    let mut branches = Vec::new();
    let (rest, k) = p.factor_out_zero_roots();
    if k > 0 {
        branches.push(leaf(Vec::new(), Vec::new(), true, Order::Infinite, k));
    }
    if rest.degree() > 0 {
        let rest = rest.clear_common_monomial();
        let polygon = NewtonPolygon::build(&rest)?;
        for seg in &polygon.segments {
            expand_segment(&rest, seg, &Branch::default(), d, &mut branches)?;
        }
    }
    let out = OracleExpansion { branches };
    if out.total_multiplicity() != p.degree() {
        return Err(Error::HypothesisViolation(format!(
            "oracle branch multiplicities sum to {}, expected {}",
            out.total_multiplicity(),
            p.degree()
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Branch<C> {
    terms: Vec<(Exponent, C)>,
    multiplicities: Vec<usize>,
    lift: Exponent,
}

impl<C> Default for Branch<C> {
    fn default() -> Self {
        Branch {
            terms: Vec::new(),
            multiplicities: Vec::new(),
            lift: Exponent::zero(),
        }
    }
}

fn leaf<C>(
    terms: Vec<(Exponent, C)>,
    multiplicities: Vec<usize>,
    exact: bool,
    certified_order: Order,
    multiplicity: usize,
) -> OracleBranch<C> {
    OracleBranch {
        expansion: RootExpansion {
            terms,
            multiplicities,
            exact,
            certified_order,
        },
        multiplicity,
    }
}

fn characteristic<C: Coeff>(p: &SeriesPolynomial<C>, seg: &Segment) -> Result<BasePolynomial<C>> {
    let height = |i: usize| match p.coeff(i).valuation() {
        Order::Finite(v) => Some(v + seg.slope * Exponent::from_integer(i as i64)),
        Order::Infinite => None,
    };
    let line = height(seg.start).expect("segment endpoints are nonzero");
    let coeffs = (seg.start..=seg.end)
        .map(|i| match height(i) {
            Some(h) if h == line => p.coeff(i).leading_term().map(|(c, _)| c),
            _ => Ok(C::zero()),
        })
        .collect::<Result<Vec<C>>>()?;
    BasePolynomial::new(coeffs)
}

fn expand_segment<C: Coeff>(
    p: &SeriesPolynomial<C>,
    seg: &Segment,
    prefix: &Branch<C>,
    d: usize,
    out: &mut Vec<OracleBranch<C>>,
) -> Result<()> {
    let chi = characteristic(p, seg)?;
    let lifted = p.shift_vertical(seg.slope);
    for (c, m) in roots_with_multiplicity(&chi)?.roots {
        let mut branch = prefix.clone();
        branch.lift = prefix.lift + seg.slope;
        branch.terms.push((branch.lift, c.clone()));
        branch.multiplicities.push(m);
        let next = lifted.shift_horizontal(&PuiseuxSeries::constant(c));
        follow(&next, branch, m, d, out)?;
    }
    Ok(())
}

fn follow<C: Coeff>(
    p: &SeriesPolynomial<C>,
    branch: Branch<C>,
    m: usize,
    d: usize,
    out: &mut Vec<OracleBranch<C>>,
) -> Result<()> {
    let (rest, k) = p.factor_out_zero_roots();
    if k > m {
        return Err(Error::HypothesisViolation(format!(
            "{k} zero roots after a step of multiplicity {m}"
        )));
    }
    if k > 0 {
        out.push(leaf(
            branch.terms.clone(),
            branch.multiplicities.clone(),
            true,
            Order::Infinite,
            k,
        ));
    }
    let remaining = m - k;
    if remaining == 0 {
        return Ok(());
    }
    let rest = rest.clear_common_monomial();
    let polygon = NewtonPolygon::build(&rest)?;
    let positive: Vec<Segment> = polygon
        .segments
        .iter()
        .filter(|s| s.slope > Exponent::zero())
        .copied()
        .collect();
    if positive.iter().map(|s| s.length).sum::<usize>() != remaining {
        return Err(Error::HypothesisViolation(
            "positive-slope edges disagree with the branch multiplicity".into(),
        ));
    }
    if branch.terms.len() == d {
        let next = positive
            .iter()
            .map(|s| s.slope)
            .min()
            .expect("remaining > 0");
        out.push(leaf(
            branch.terms,
            branch.multiplicities,
            false,
            Order::Finite(branch.lift + next),
            remaining,
        ));
        return Ok(());
    }
    for seg in &positive {
        expand_segment(&rest, seg, &branch, d, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::verify_residual;
    use crate::series::exp;
    use num_rational::BigRational;

    type S = PuiseuxSeries<BigRational>;
    type P = SeriesPolynomial<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn s(terms: &[(i64, i64, i64)]) -> S {
        S::exact(terms.iter().map(|&(c, n, d)| (exp(n, d), q(c))))
    }

    fn series_of(b: &OracleBranch<BigRational>) -> S {
        b.expansion.series()
    }

    #[test]
    fn sqrt_x_has_two_branches() {
        let p = P::new(vec![s(&[(-1, 1, 1)]), S::zero(), s(&[(1, 0, 1)])]).unwrap();
        let o = classic_newton_puiseux(&p, 3).unwrap();
        let got: Vec<S> = o.branches.iter().map(series_of).collect();
        assert_eq!(got, vec![s(&[(1, 1, 2)]), s(&[(-1, 1, 2)])]);
        assert!(o.branches.iter().all(|b| b.expansion.exact));
    }

    #[test]
    fn quadratic_pair_branches() {
        let a = s(&[(1, 0, 1), (1, 1, 1), (1, 2, 1)]);
        let b = s(&[(2, 0, 1), (1, 1, 1), (1, 2, 1)]);
        let o = classic_newton_puiseux(&P::from_roots(&[a.clone(), b.clone()]), 3).unwrap();
        let got: Vec<S> = o.branches.iter().map(series_of).collect();
        assert_eq!(got, vec![a, b]);
        assert!(o.branches.iter().all(|b| b.expansion.exact));
    }

    #[test]
    fn four_root_leading_exponents() {
        let p = P::from_roots(&[
            s(&[(1, 0, 1), (1, 1, 1), (1, 2, 1)]),
            s(&[(1, 1, 2)]),
            s(&[(1, 3, 5)]),
            s(&[(1, 1, 2), (-1, 2, 1)]),
        ]);
        let o = classic_newton_puiseux(&p, 4).unwrap();
        let mut leading: Vec<Exponent> =
            o.branches.iter().map(|b| b.expansion.terms[0].0).collect();
        leading.sort();
        assert_eq!(leading, vec![exp(0, 1), exp(1, 2), exp(1, 2), exp(3, 5)]);
        assert_eq!(o.total_multiplicity(), 4);
        for b in &o.branches {
            assert_eq!(verify_residual(&p, &b.expansion), Order::Infinite);
        }
    }

    #[test]
    fn truncated_branches_have_growing_residual() {
        // y^2 - (1 + x)
        let p = P::new(vec![
            s(&[(-1, 0, 1), (-1, 1, 1)]),
            S::zero(),
            s(&[(1, 0, 1)]),
        ])
        .unwrap();
        let o = classic_newton_puiseux(&p, 3).unwrap();
        assert_eq!(o.branches.len(), 2);
        for b in &o.branches {
            assert!(!b.expansion.exact);
            let last = b.expansion.terms.last().unwrap().0;
            assert!(verify_residual(&p, &b.expansion) > Order::Finite(last));
        }
    }

    #[test]
    fn zero_and_repeated_roots() {
        // y (y - x)^2
        let x = s(&[(1, 1, 1)]);
        let p = P::from_roots(&[S::zero(), x.clone(), x.clone()]);
        let o = classic_newton_puiseux(&p, 2).unwrap();
        assert_eq!(o.total_multiplicity(), 3);
        assert!(o.contains(&[(exp(1, 1), q(1))]));
        let double = o.branches.iter().find(|b| b.multiplicity == 2).unwrap();
        assert_eq!(series_of(double), x);
    }

    #[test]
    fn irrational_characteristic_root_is_unsolvable() {
        let p = P::new(vec![s(&[(-2, 0, 1)]), S::zero(), s(&[(1, 0, 1)])]).unwrap();
        assert!(matches!(
            classic_newton_puiseux(&p, 1),
            Err(Error::UnsolvableOverField { .. })
        ));
    }
}
