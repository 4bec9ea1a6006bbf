//! Newton polygon of a series polynomial.
//!
//! Points are `(i, v(a_i))` for the nonzero coefficients; the polygon is their
//! lower convex hull. Each hull edge from index `i` to `j` is reported by the
//! root valuation it certifies, `(v(a_i) - v(a_j)) / (j - i)`, together with
//! its horizontal length, which counts the roots having that valuation.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::SeriesPolynomial;
use crate::scalar::Coeff;
use crate::series::{Exponent, Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    /// Valuation of the roots certified by this edge.
    pub slope: Exponent,
    pub length: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, Exponent)>,
    pub hull: Vec<(usize, Exponent)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn build<C: Coeff>(p: &SeriesPolynomial<C>) -> Result<Self> {
        let points: Vec<(usize, Exponent)> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| match a.valuation() {
                Order::Finite(v) => Some((i, v)),
                Order::Infinite => None,
            })
            .collect();
        Self::from_points(points)
    }

    /// Points must have distinct, increasing indices.
    pub fn from_points(points: Vec<(usize, Exponent)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::DegeneratePolynomial(
                "Newton polygon needs at least two nonzero coefficients".into(),
            ));
        }
        let hull = lower_hull(&points);
        let segments = hull
            .windows(2)
            .map(|w| {
                let ((i, vi), (j, vj)) = (w[0], w[1]);
                Segment {
                    slope: (vi - vj) / Exponent::from_integer((j - i) as i64),
                    length: j - i,
                    start: i,
                    end: j,
                }
            })
            .collect();
        Ok(NewtonPolygon {
            points,
            hull,
            segments,
        })
    }

    /// Smallest strictly positive root valuation.
    pub fn min_nonzero_slope(&self) -> Result<Exponent> {
        self.segments
            .iter()
            .map(|s| s.slope)
            .filter(|s| *s > Exponent::zero())
            .min()
            .ok_or(Error::NoPositiveSlope)
    }

    /// Smallest root valuation overall (may be negative).
    pub fn min_slope(&self) -> Exponent {
        self.segments
            .iter()
            .map(|s| s.slope)
            .min()
            .expect("polygon has at least one segment")
    }
}

fn cross(o: (usize, Exponent), a: (usize, Exponent), b: (usize, Exponent)) -> Exponent {
    let dx1 = Exponent::from_integer(a.0 as i64 - o.0 as i64);
    let dx2 = Exponent::from_integer(b.0 as i64 - o.0 as i64);
    dx1 * (b.1 - o.1) - (a.1 - o.1) * dx2
}

/// Monotone chain, lower half only. Collinear points are dropped, so each
/// edge has a distinct slope.
fn lower_hull(points: &[(usize, Exponent)]) -> Vec<(usize, Exponent)> {
    let mut hull: Vec<(usize, Exponent)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= Exponent::zero()
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}
