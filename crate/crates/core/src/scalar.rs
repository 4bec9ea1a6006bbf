//! Base-field scalars.
//!
//! Two coefficient fields are supported: exact rationals ([`BigRational`]) and
//! double-precision complex numbers ([`Complex64`]). Everything above this
//! module is generic over [`Coeff`], so the choice of field is made once at
//! the top of a computation.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::baseroots;
use crate::error::Result;

/// Magnitude below which a float coefficient counts as zero.
pub const ZERO_EPS: f64 = 1e-10;

/// Relative tolerance used when comparing float magnitudes and phases in the
/// branch order.
const ORDER_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Exact,
    Float,
}

impl FieldMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldMode::Exact => "exact",
            FieldMode::Float => "float",
        }
    }
}

/// A coefficient field element.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: FieldMode;

    fn zero() -> Self;
    fn one() -> Self;
    /// Exact zero test in exact mode, `|z| < ZERO_EPS` in float mode.
    fn is_zero(&self) -> bool;
    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Deterministic branch order: smaller magnitude first, then smaller
    /// phase angle in `[0, 2π)` (so positive reals precede negative ones).
    fn branch_cmp(&self, other: &Self) -> Ordering;

    /// Roots with multiplicities of `a_0 + a_1 y + ... + a_n y^n`.
    fn find_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>>;

    fn to_complex(&self) -> Complex64;

    /// Equality up to the field's notion of zero.
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }

    /// Splits into (is_negative, rendered magnitude) for sign-aware printing.
    fn render_parts(&self) -> (bool, String);

    fn render(&self) -> String {
        let (neg, body) = self.render_parts();
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Coeff for BigRational {
    const MODE: FieldMode = FieldMode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn branch_cmp(&self, other: &Self) -> Ordering {
        self.abs()
            .cmp(&other.abs())
            .then_with(|| other.is_positive().cmp(&self.is_positive()))
    }

    fn find_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>> {
        baseroots::rational_roots(coeffs)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn render_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

fn phase(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < -ORDER_EPS {
        a + 2.0 * PI
    } else {
        a.max(0.0)
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

impl Coeff for Complex64 {
    const MODE: FieldMode = FieldMode::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.norm() < ZERO_EPS
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn branch_cmp(&self, other: &Self) -> Ordering {
        let (ma, mb) = (self.norm(), other.norm());
        if (ma - mb).abs() > ORDER_EPS * (1.0 + ma.max(mb)) {
            return ma.partial_cmp(&mb).unwrap_or(Ordering::Equal);
        }
        let (pa, pb) = (phase(*self), phase(*other));
        if (pa - pb).abs() > ORDER_EPS {
            pa.partial_cmp(&pb).unwrap_or(Ordering::Equal)
        } else {
            Ordering::Equal
        }
    }

    fn find_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>> {
        baseroots::complex_roots(coeffs)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn render_parts(&self) -> (bool, String) {
        if self.im.abs() <= ZERO_EPS * (1.0 + self.re.abs()) {
            (self.re < 0.0, fmt_f64(self.re.abs()))
        } else {
            let sign = if self.im < 0.0 { '-' } else { '+' };
            (
                false,
                format!("({}{}{}i)", fmt_f64(self.re), sign, fmt_f64(self.im.abs())),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_branch_order_prefers_small_then_positive() {
        let mut v = vec![q(2, 1), q(-1, 1), q(1, 1), q(-1, 2)];
        v.sort_by(|a, b| a.branch_cmp(b));
        assert_eq!(v, vec![q(-1, 2), q(1, 1), q(-1, 1), q(2, 1)]);
    }

    #[test]
    fn complex_branch_order_uses_phase() {
        let mut v = [
            Complex64::new(0.0, -1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ];
        v.sort_by(|a, b| a.branch_cmp(b));
        assert_eq!(v[0], Complex64::new(1.0, 0.0));
        assert_eq!(v[1], Complex64::new(0.0, 1.0));
        assert_eq!(v[2], Complex64::new(-1.0, 0.0));
        assert_eq!(v[3], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn float_zero_uses_eps() {
        assert!(Coeff::is_zero(&Complex64::new(1e-12, 0.0)));
        assert!(!Coeff::is_zero(&Complex64::new(1e-8, 0.0)));
    }

    #[test]
    fn rendering() {
        assert_eq!(q(-3, 2).render(), "-3/2");
        assert_eq!(Complex64::new(-2.5, 0.0).render(), "-2.5");
        assert_eq!(Complex64::new(1.0, -2.0).render(), "(1-2i)");
    }
}
