//! Polynomials in `y` with Puiseux-series coefficients, their restriction to
//! `x = 0`, and the two root-shifting transforms: translating every root by a
//! series (horizontal shift) and scaling every root by a power of `x`
//! (vertical shift).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::{Exponent, Order, PuiseuxSeries};
use crate::upoly;

/// `a_0 + a_1 y + ... + a_d y^d` with nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPolynomial<C> {
    coeffs: Vec<PuiseuxSeries<C>>,
}

/// Univariate polynomial over the base field, constant term first, nonzero
/// leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePolynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> BasePolynomial<C> {
    /// Drops trailing zeros; fails on the zero polynomial.
    pub fn new(mut coeffs: Vec<C>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::DegeneratePolynomial("zero polynomial".into()));
        }
        Ok(BasePolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// Index of the lowest nonzero coefficient, i.e. the multiplicity of the
    /// root `0`.
    pub fn lowest_index(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl<C: Coeff> SeriesPolynomial<C> {
    /// Drops trailing zero coefficients; fails if nothing is left.
    pub fn new(mut coeffs: Vec<PuiseuxSeries<C>>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::DegeneratePolynomial("zero polynomial".into()));
        }
        Ok(SeriesPolynomial { coeffs })
    }

    /// Monic product `Π (y - r)` of linear factors.
    pub fn from_roots(roots: &[PuiseuxSeries<C>]) -> Self {
        let mut coeffs = vec![PuiseuxSeries::one()];
        for r in roots {
            let mut next = vec![PuiseuxSeries::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * r);
            }
            coeffs = next;
        }
        SeriesPolynomial::new(coeffs).expect("monic product is nonzero")
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PuiseuxSeries<C> {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(PuiseuxSeries::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &PuiseuxSeries<C> {
        &self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SeriesPolynomial<D> {
        SeriesPolynomial::new(self.coeffs.iter().map(|c| c.map_coeffs(&f)).collect())
            .expect("coefficient map keeps a nonzero polynomial")
    }

    pub fn scale(&self, c: &C, r: Exponent) -> Self {
        SeriesPolynomial::new(self.coeffs.iter().map(|a| a.scale_monomial(c, r)).collect())
            .expect("scaling by a unit keeps a nonzero polynomial")
    }

    /// Divides every coefficient by `x^m`, `m` the minimal coefficient
    /// valuation, so that the smallest valuation becomes 0.
    pub fn clear_common_monomial(&self) -> Self {
        match self.coeffs.iter().map(|c| c.valuation()).min() {
            Some(Order::Finite(m)) if !m.is_zero() => self.scale(&C::one(), -m),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> Option<Self> {
        let coeffs: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale_monomial(&C::from_i64(i as i64), Exponent::zero()))
            .collect();
        SeriesPolynomial::new(coeffs).ok()
    }

    /// Horner evaluation at `y0`.
    pub fn evaluate(&self, y0: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
        self.coeffs
            .iter()
            .rev()
            .fold(PuiseuxSeries::zero(), |acc, a| &(&acc * y0) + a)
    }

    /// `Q|_{x=0}`, trimmed to its true degree.
    pub fn restrict_at_zero(&self) -> Result<BasePolynomial<C>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.eval_at_zero())
            .collect::<Result<Vec<_>>>()?;
        BasePolynomial::new(coeffs)
    }

    /// `p(y + c)`: the polynomial whose roots are the roots of `p` minus `c`.
    pub fn shift_horizontal(&self, c: &PuiseuxSeries<C>) -> Self {
        // Horner in the ring of polynomials: q <- q·(y + c) + a_i
        let d = self.degree();
        let mut q: Vec<PuiseuxSeries<C>> = vec![self.coeffs[d].clone()];
        for a in self.coeffs[..d].iter().rev() {
            let mut next = vec![PuiseuxSeries::zero(); q.len() + 1];
            for (j, b) in q.iter().enumerate() {
                next[j + 1] = &next[j + 1] + b;
                next[j] = &next[j] + &(b * c);
            }
            next[0] = &next[0] + a;
            q = next;
        }
        SeriesPolynomial::new(q).expect("translation keeps the leading coefficient")
    }

    /// Multiplies every root by `x^{-r}`: `a_i <- a_i · x^{-r (d - i)}`,
    /// followed by clearing the common monomial factor.
    pub fn shift_vertical(&self, r: Exponent) -> Self {
        if r.is_zero() {
            return self.clear_common_monomial();
        }
        let d = self.degree() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.scale_monomial(&C::one(), -r * Exponent::from_integer(d - i as i64)))
            .collect();
        SeriesPolynomial::new(coeffs)
            .expect("scaling keeps a nonzero polynomial")
            .clear_common_monomial()
    }

    /// Divides by the leading coefficient, inverting it as a series truncated
    /// at `work` when it is not a monomial.
    pub fn make_monic(&self, work: Exponent) -> Result<Self> {
        let inv = self.leading().inverse(work)?;
        let d = self.degree();
        let mut coeffs: Vec<_> = self.coeffs[..d].iter().map(|a| a * &inv).collect();
        coeffs.push(PuiseuxSeries::one());
        SeriesPolynomial::new(coeffs)
    }

    /// Removes the largest power `y^k` dividing `p`; returns the quotient and `k`.
    pub fn factor_out_zero_roots(&self) -> (Self, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (
            SeriesPolynomial {
                coeffs: self.coeffs[k..].to_vec(),
            },
            k,
        )
    }

    /// Parseable form, highest power of `y` first: `(1)*y^2 + (-x)`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("({c})"),
                1 => format!("({c})*y"),
                _ => format!("({c})*y^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl<C: Coeff> fmt::Display for SeriesPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// ---------------------------------------------------------------------------
// square-free part over Q[t, 1/t], t = x^{1/N}

type BiPoly = Vec<upoly::UPoly>;

/// Square-free part of `p` in `y` (exact mode): `p / gcd(p, ∂p/∂y)`, up to a
/// monomial unit. Roots are unchanged; every root becomes simple.
pub fn squarefree_part(p: &SeriesPolynomial<BigRational>) -> Result<SeriesPolynomial<BigRational>> {
    if !p.is_exact() {
        return Err(Error::TruncatedInput(
            "square-free reduction needs exact coefficients".into(),
        ));
    }
    let (denom, shift) = exponent_grid(p);
    let a = to_bipoly(p, denom, shift);
    let da: BiPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| upoly::scale(c, &BigRational::from_integer(BigInt::from(i))))
        .collect();
    if bi_degree(&da).is_none() {
        return Ok(p.clone());
    }
    let g = heuristic_gcd(&a, &da).unwrap_or_else(|| bi_gcd(&a, &da));
    if bi_degree(&g).unwrap_or(0) == 0 {
        return Ok(p.clone());
    }
    let q = bi_div(&a, &g).expect("gcd divides the polynomial");
    from_bipoly(&q, denom)
}

fn exponent_grid(p: &SeriesPolynomial<BigRational>) -> (i64, Exponent) {
    let mut denom = 1i64;
    let mut min = Exponent::zero();
    for c in p.coeffs() {
        for (e, _) in c.terms() {
            denom = denom.lcm(e.denom());
            min = min.min(*e);
        }
    }
    (denom, min)
}

fn to_bipoly(p: &SeriesPolynomial<BigRational>, denom: i64, shift: Exponent) -> BiPoly {
    p.coeffs()
        .iter()
        .map(|c| {
            let mut poly: upoly::UPoly = Vec::new();
            for (e, v) in c.terms() {
                let k = ((*e - shift) * Exponent::from_integer(denom)).to_integer() as usize;
                if poly.len() <= k {
                    poly.resize(k + 1, <BigRational as Zero>::zero());
                }
                poly[k] += v;
            }
            upoly::trim(poly)
        })
        .collect()
}

fn from_bipoly(a: &BiPoly, denom: i64) -> Result<SeriesPolynomial<BigRational>> {
    let coeffs = a
        .iter()
        .map(|c| {
            PuiseuxSeries::exact(
                c.iter()
                    .enumerate()
                    .map(|(k, v)| (Exponent::new(k as i64, denom), v.clone())),
            )
        })
        .collect();
    Ok(SeriesPolynomial::new(coeffs)?.clear_common_monomial())
}

fn bi_degree(a: &BiPoly) -> Option<usize> {
    a.iter().rposition(|c| !upoly::is_zero(c))
}

fn bi_trim(mut a: BiPoly) -> BiPoly {
    while a.last().is_some_and(|c| upoly::is_zero(c)) {
        a.pop();
    }
    a
}

fn content(a: &BiPoly) -> upoly::UPoly {
    a.iter().fold(Vec::new(), |g, c| {
        if upoly::is_zero(c) {
            g
        } else {
            upoly::gcd(&g, c)
        }
    })
}

fn primitive(a: &BiPoly) -> BiPoly {
    let c = content(a);
    if upoly::is_zero(&c) {
        return a.clone();
    }
    a.iter().map(|x| upoly::divrem(x, &c).0).collect()
}

/// Pseudo-remainder of `a` by `b` in `Q[t][y]`.
fn bi_prem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = bi_degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = bi_trim(a.clone());
    while let Some(dr) = bi_degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let k = dr - db;
        let mut next: BiPoly = r.iter().map(|c| upoly::mul(c, lb)).collect();
        for (i, c) in b[..=db].iter().enumerate() {
            next[i + k] = upoly::sub(&next[i + k], &upoly::mul(&lr, c));
        }
        next[dr] = Vec::new();
        r = bi_trim(next);
    }
    r
}

/// Primitive-PRS gcd in `Q[t][y]`, up to a unit.
fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let cont = upoly::gcd(&content(a), &content(b));
    let (mut x, mut y) = (primitive(a), primitive(b));
    if bi_degree(&x) < bi_degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while bi_degree(&y).is_some() {
        let r = bi_prem(&x, &y);
        x = y;
        y = if bi_degree(&r).is_some() {
            primitive(&r)
        } else {
            r
        };
    }
    x.iter().map(|c| upoly::mul(c, &cont)).collect()
}

/// Division `a / b` in `Q[t][y]`, `None` unless it is exact.
fn bi_div(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    let db = bi_degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = bi_trim(a.clone());
    let da = bi_degree(&r).unwrap_or(0);
    let mut q: BiPoly = vec![Vec::new(); da.saturating_sub(db) + 1];
    while let Some(dr) = bi_degree(&r) {
        if dr < db {
            return None;
        }
        let (f, rem) = upoly::divrem(&r[dr], lb);
        if !upoly::is_zero(&rem) {
            return None;
        }
        let k = dr - db;
        for (i, c) in b[..=db].iter().enumerate() {
            r[i + k] = upoly::sub(&r[i + k], &upoly::mul(&f, c));
        }
        r[dr] = Vec::new();
        q[k] = f;
        r = bi_trim(r);
    }
    Some(bi_trim(q))
}

/// `a` scaled to integer coefficients with trivial integer content.
fn to_integer(a: &BiPoly) -> Vec<Vec<BigInt>> {
    let l = a
        .iter()
        .flatten()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Vec<BigInt>> = a
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| (v * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let g = ints
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter()
        .map(|c| c.into_iter().map(|v| v / &g).collect())
        .collect()
}

fn max_norm(a: &[Vec<BigInt>]) -> BigInt {
    a.iter()
        .flatten()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = int_content(&v);
    if g.is_zero() || g == BigInt::from(1) {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// gcd in `Z[y]` by primitive pseudo-remainder sequence.
fn integer_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let c = int_content(a).gcd(&int_content(b));
    let mut x = int_primitive(int_trim(a.to_vec()));
    let mut y = int_primitive(int_trim(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        // pseudo-remainder of x by y
        let lb = y.last().expect("nonzero").clone();
        let mut r = x;
        while r.len() >= y.len() {
            let lr = r.last().expect("nonzero").clone();
            let k = r.len() - y.len();
            for v in r.iter_mut() {
                *v *= &lb;
            }
            for (i, v) in y.iter().enumerate() {
                r[i + k] -= &lr * v;
            }
            r = int_trim(r);
        }
        x = y;
        y = int_primitive(r);
    }
    if x.last().is_some_and(|v| v.is_negative()) {
        x = x.into_iter().map(|v| -v).collect();
    }
    x.into_iter().map(|v| v * &c).collect()
}

/// Balanced base-`xi` digits of `n`, least significant first.
fn balanced_digits(n: &BigInt, xi: &BigInt) -> upoly::UPoly {
    let mut n = n.clone();
    let mut out = Vec::new();
    while !n.is_zero() {
        let mut d = n.mod_floor(xi);
        if &d * 2 > *xi {
            d -= xi;
        }
        n = (&n - &d) / xi;
        out.push(BigRational::from_integer(d));
    }
    out
}

/// Heuristic gcd: evaluate at a large integer `t = xi`, take the gcd in
/// `Z[y]`, read the `t`-coefficients back from balanced digits and confirm
/// by trial division. `None` if no attempt is confirmed.
fn heuristic_gcd(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    let (za, zb) = (to_integer(a), to_integer(b));
    let eval = |p: &[Vec<BigInt>], xi: &BigInt| -> Vec<BigInt> {
        p.iter()
            .map(|c| c.iter().rev().fold(BigInt::zero(), |acc, v| acc * xi + v))
            .collect()
    };
    let mut xi = max_norm(&za).min(max_norm(&zb)) * 2 + 29;
    for _ in 0..6 {
        let h = integer_gcd(&eval(&za, &xi), &eval(&zb, &xi));
        let g = bi_trim(h.iter().map(|c| balanced_digits(c, &xi)).collect());
        if bi_degree(&g).is_some() && bi_div(a, &g).is_some() && bi_div(b, &g).is_some() {
            return Some(g);
        }
        xi = xi * 73794 / 27011;
    }
    None
}
