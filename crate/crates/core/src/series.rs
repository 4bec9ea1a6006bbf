//! Sparse truncated Puiseux series with exact rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Exponents are always exact rationals, in lowest terms.
pub type Exponent = Rational64;

/// An exponent or `+∞`. Used both for valuations (`v(0) = +∞`) and for
/// truncation orders (`Infinite` means the series is known exactly).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(Exponent),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<Exponent> {
        match self {
            Order::Finite(e) => Some(e),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Order::Infinite
    }
}

impl From<Exponent> for Order {
    fn from(e: Exponent) -> Self {
        Order::Finite(e)
    }
}

impl Add for Order {
    type Output = Order;

    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) => write!(f, "{}", fmt_exponent(*e)),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// `p/q` for proper fractions, `n` for integers.
pub fn fmt_exponent(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub fn exp(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

/// A truncated Puiseux series `Σ b_k x^{e_k} + O(x^trunc)`.
///
/// Terms are kept sorted by strictly increasing exponent, contain no zero
/// coefficients, and every exponent lies strictly below the truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries<C> {
    terms: Vec<(Exponent, C)>,
    trunc: Order,
}

impl<C: Coeff> PuiseuxSeries<C> {
    pub fn new<I>(terms: I, trunc: Order) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        for (e, c) in terms {
            if Order::Finite(e) >= trunc {
                continue;
            }
            match acc.remove(&e) {
                Some(prev) => {
                    acc.insert(e, prev + c);
                }
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_sorted(
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            trunc,
        )
    }

    fn from_sorted(terms: Vec<(Exponent, C)>, trunc: Order) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        PuiseuxSeries { terms, trunc }
    }

    /// Exact series from terms.
    pub fn exact<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        Self::new(terms, Order::Infinite)
    }

    pub fn zero() -> Self {
        Self::from_sorted(Vec::new(), Order::Infinite)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    pub fn monomial(c: C, e: Exponent) -> Self {
        Self::exact([(e, c)])
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn trunc_order(&self) -> Order {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_trunc(&self, trunc: Order) -> Self {
        Self::new(self.terms.iter().cloned(), trunc.min(self.trunc))
    }

    /// Smallest stored exponent, `+∞` for the zero series.
    pub fn valuation(&self) -> Order {
        self.terms
            .first()
            .map_or(Order::Infinite, |(e, _)| Order::Finite(*e))
    }

    /// Lower bound for the valuation of the full (untruncated) series.
    fn known_valuation(&self) -> Order {
        self.valuation().min(self.trunc)
    }

    pub fn coeff_at(&self, e: Exponent) -> C {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(&e))
            .map_or_else(|_| C::zero(), |i| self.terms[i].1.clone())
    }

    pub fn max_exponent(&self) -> Option<Exponent> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_term(&self) -> Result<(C, Exponent)> {
        self.terms
            .first()
            .map(|(e, c)| (c.clone(), *e))
            .ok_or(Error::ZeroSeries)
    }

    /// The coefficient at `x^0`, i.e. the value at `x = 0`.
    pub fn eval_at_zero(&self) -> Result<C> {
        match self.valuation() {
            Order::Finite(v) if v < Exponent::zero() => Err(Error::NegativeValuation),
            _ => Ok(self.coeff_at(Exponent::zero())),
        }
    }

    /// Every term `(b, k)` becomes `(c·b, k + r)`.
    pub fn scale_monomial(&self, c: &C, r: Exponent) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let trunc = match self.trunc {
            Order::Finite(t) => Order::Finite(t + r),
            Order::Infinite => Order::Infinite,
        };
        Self::new(
            self.terms
                .iter()
                .map(|(e, b)| (*e + r, c.clone() * b.clone())),
            trunc,
        )
    }

    /// Multiplicative inverse. Monomials invert exactly; otherwise the result
    /// is truncated at `work` (or earlier, if the input is itself truncated).
    pub fn inverse(&self, work: Exponent) -> Result<Self> {
        let (c, v) = self.leading_term()?;
        let inv_c = C::one() / c;
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Self::monomial(inv_c, -v));
        }
        // s = c x^v (1 + u) with v(u) > 0
        let u = self.scale_monomial(&inv_c, -v) - Self::one();
        let target = match self.trunc {
            Order::Finite(t) => work.min(t - v - v),
            Order::Infinite => work,
        };
        // relative precision of the bracketed factor
        let rel = Order::Finite(target + v);
        let neg_u = (-u).with_trunc(rel);
        let mut sum = Self::one().with_trunc(rel);
        let mut power = Self::one().with_trunc(rel);
        loop {
            power = (&power * &neg_u).with_trunc(rel);
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale_monomial(&inv_c, -v))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PuiseuxSeries<D> {
        PuiseuxSeries::new(self.terms.iter().map(|(e, c)| (*e, f(c))), self.trunc)
    }

    /// Renders including the `O(x^k)` tail when the series is truncated.
    pub fn render_with_order(&self) -> String {
        match self.trunc {
            Order::Infinite => self.to_string(),
            Order::Finite(t) => {
                let tail = format!("O({})", fmt_power(t));
                if self.is_zero() {
                    tail
                } else {
                    format!("{self} + {tail}")
                }
            }
        }
    }
}

impl<'a, C: Coeff> Add<&'a PuiseuxSeries<C>> for &'a PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn add(self, rhs: &'a PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        let trunc = self.trunc.min(rhs.trunc);
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let next = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                a[i - 1].clone()
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                b[j - 1].clone()
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, a[i - 1].1.clone() + b[j - 1].1.clone())
            };
            if Order::Finite(next.0) < trunc && !next.1.is_zero() {
                out.push(next);
            }
        }
        PuiseuxSeries::from_sorted(out, trunc)
    }
}

impl<C: Coeff> Add for PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coeff> Neg for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn neg(self) -> PuiseuxSeries<C> {
        PuiseuxSeries::from_sorted(
            self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            self.trunc,
        )
    }
}

impl<C: Coeff> Neg for PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn neg(self) -> Self {
        -&self
    }
}

impl<'a, C: Coeff> Sub<&'a PuiseuxSeries<C>> for &'a PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn sub(self, rhs: &'a PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Sub for PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a, C: Coeff> Mul<&'a PuiseuxSeries<C>> for &'a PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn mul(self, rhs: &'a PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        let trunc = (self.trunc + rhs.known_valuation()).min(rhs.trunc + self.known_valuation());
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = *ea + *eb;
                if Order::Finite(e) >= trunc {
                    // rhs terms are sorted, later ones only get larger
                    break;
                }
                let prod = ca.clone() * cb.clone();
                match acc.remove(&e) {
                    Some(prev) => acc.insert(e, prev + prod),
                    None => acc.insert(e, prod),
                };
            }
        }
        PuiseuxSeries::from_sorted(
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            trunc,
        )
    }
}

impl<C: Coeff> Mul for PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

fn fmt_power(e: Exponent) -> String {
    if e.is_one() {
        "x".to_string()
    } else if e.is_integer() && e > Exponent::zero() {
        format!("x^{}", e.numer())
    } else {
        format!("x^({})", fmt_exponent(e))
    }
}

/// Canonical form: increasing exponents, `3*x^(1/2) - x^2`.
impl<C: Coeff> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let (neg, body) = c.render_parts();
            let text = if e.is_zero() {
                body
            } else if body == "1" {
                fmt_power(*e)
            } else {
                format!("{body}*{}", fmt_power(*e))
            };
            match (idx, neg) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}
