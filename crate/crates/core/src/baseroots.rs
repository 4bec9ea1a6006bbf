//! Roots with multiplicities of univariate polynomials over the base field.
//!
//! Exact mode runs a square-free decomposition followed by a rational-root
//! search on every factor; any factor left without rational roots makes the
//! whole call fail with [`Error::UnsolvableOverField`]. Float mode runs the
//! Aberth–Ehrlich simultaneous iteration and clusters nearby roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polyring::BasePolynomial;
use crate::scalar::Coeff;
use crate::upoly;

pub const MAX_ITERATIONS: usize = 200;
pub const CONVERGENCE_TOL: f64 = 1e-12;
pub const CLUSTER_TOL: f64 = 1e-6;

/// Trial-division budget before falling back to numeric candidates.
const TRIAL_DIVISION_LIMIT: u64 = 2_000_000;

/// Roots of a base polynomial together with their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<C> {
    pub roots: Vec<(C, usize)>,
}

impl<C: Coeff> RootSet<C> {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Zero-root multiplicity `s` plus the nonzero roots.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport<C> {
    pub s: usize,
    pub nonzero: Vec<(C, usize)>,
}

impl<C: Coeff> MultiplicityReport<C> {
    /// Nonzero root that comes first in the branch order.
    pub fn first_nonzero(&self) -> Option<&(C, usize)> {
        self.nonzero.iter().min_by(|a, b| a.0.branch_cmp(&b.0))
    }
}

pub fn roots_with_multiplicity<C: Coeff>(p: &BasePolynomial<C>) -> Result<RootSet<C>> {
    if p.degree() == 0 {
        return Err(Error::DegeneratePolynomial(
            "constant polynomial has no roots".into(),
        ));
    }
    let mut roots = C::find_roots(p.coeffs())?;
    roots.sort_by(|a, b| a.0.branch_cmp(&b.0));
    Ok(RootSet { roots })
}

pub fn multiplicity_report<C: Coeff>(rs: &RootSet<C>) -> MultiplicityReport<C> {
    let mut s = 0;
    let mut nonzero = Vec::new();
    for (r, m) in &rs.roots {
        if r.is_zero() {
            s += m;
        } else {
            nonzero.push((r.clone(), *m));
        }
    }
    MultiplicityReport { s, nonzero }
}

fn leading_zero_count<C: Coeff>(coeffs: &[C]) -> usize {
    coeffs.iter().take_while(|c| c.is_zero()).count()
}

// ---------------------------------------------------------------------------
// exact mode

pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<(BigRational, usize)>> {
    let k = leading_zero_count(coeffs);
    let rest = upoly::trim(coeffs[k..].to_vec());
    let mut out = Vec::new();
    if k > 0 {
        out.push((<BigRational as Zero>::zero(), k));
    }
    for (factor, mult) in upoly::squarefree_decomposition(&rest) {
        let (found, leftover) = rational_roots_squarefree(&factor);
        if upoly::degree(&leftover).unwrap_or(0) > 0 {
            return Err(Error::UnsolvableOverField {
                coeffs: coeffs.to_vec(),
            });
        }
        out.extend(found.into_iter().map(|r| (r, mult)));
    }
    Ok(out)
}

/// Rational roots of a square-free polynomial with nonzero constant term, and
/// the cofactor left after deflating them.
fn rational_roots_squarefree(f: &[BigRational]) -> (Vec<BigRational>, upoly::UPoly) {
    let mut rest = upoly::trim(f.to_vec());
    let mut found = Vec::new();
    let ints = upoly::primitive_integer(&rest);
    let candidates = match (
        divisors(&ints[0].abs()),
        divisors(&ints[ints.len() - 1].abs()),
    ) {
        (Some(ps), Some(qs)) => theorem_candidates(&ps, &qs),
        _ => numeric_candidates(&ints),
    };
    for cand in candidates {
        if upoly::degree(&rest).unwrap_or(0) == 0 {
            break;
        }
        if Zero::is_zero(&upoly::eval(&rest, &cand)) {
            let lin = vec![-cand.clone(), <BigRational as One>::one()];
            rest = upoly::divrem(&rest, &lin).0;
            found.push(cand);
        }
    }
    (found, rest)
}

/// All `±p/q` with `p | a_0`, `q | a_n`, deduplicated.
fn theorem_candidates(ps: &[BigInt], qs: &[BigInt]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    for p in ps {
        for q in qs {
            let r = BigRational::new(p.clone(), q.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.to_u128()?;
    if n == 0 {
        return None;
    }
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut d: u128 = 2;
    let mut steps = 0u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
        steps += 1;
        if steps > TRIAL_DIVISION_LIMIT {
            return None;
        }
    }
    if n > 1 {
        factors.push((n, 1));
    }
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        divs = next;
    }
    Some(divs.into_iter().map(BigInt::from).collect())
}

/// Continued-fraction convergents of the real numeric roots. Used only when the
/// coefficients are too large to factor by trial division.
fn numeric_candidates(ints: &[BigInt]) -> Vec<BigRational> {
    let coeffs: Vec<Complex64> = ints
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::MAX), 0.0))
        .collect();
    let lead = ints[ints.len() - 1].abs();
    let approx = match aberth(&coeffs) {
        Ok(r) => r,
        Err(Error::NonConvergence { best, .. }) => best,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::new();
    for z in approx {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        for r in convergents(z.re, 40) {
            if (&lead % r.denom()).is_zero() {
                out.push(r);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn convergents(x: f64, max_terms: usize) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut t = x;
    for _ in 0..max_terms {
        if !t.is_finite() || t.abs() > 1e18 {
            break;
        }
        let a = t.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(BigRational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = t - a;
        if frac.abs() < 1e-15 {
            break;
        }
        t = 1.0 / frac;
    }
    out
}

// ---------------------------------------------------------------------------
// float mode

pub(crate) fn complex_roots(coeffs: &[Complex64]) -> Result<Vec<(Complex64, usize)>> {
    let k = leading_zero_count(coeffs);
    let rest: Vec<Complex64> = coeffs[k..].to_vec();
    let approx = if rest.len() > 1 {
        aberth(&rest)?
    } else {
        Vec::new()
    };
    let mut out = cluster(&rest, approx);
    if k > 0 {
        match out.iter_mut().find(|(r, _)| *r == Complex64::new(0.0, 0.0)) {
            Some(z) => z.1 += k,
            None => out.push((Complex64::new(0.0, 0.0), k)),
        }
    }
    Ok(out)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn complex_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

/// Aberth–Ehrlich iteration from a perturbed circle. Multiple roots converge
/// only linearly, so an unconverged run is still accepted when every iterate
/// has a tiny residual.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    if n == 1 {
        return Ok(vec![-coeffs[0] / lead]);
    }
    let radius = (coeffs[0].norm() / lead.norm())
        .powf(1.0 / n as f64)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < CONVERGENCE_TOL {
            return Ok(z);
        }
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let ok = z.iter().all(|&r| {
        let mag = 1.0 + r.norm();
        horner(coeffs, r).norm() <= 1e-8 * scale * mag.powi(n as i32)
    });
    if ok {
        Ok(z)
    } else {
        Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            best: z,
        })
    }
}

/// Groups iterates within `CLUSTER_TOL` of one another, averages each cluster,
/// and polishes the average with Newton steps on the `(m-1)`-th derivative.
fn cluster(coeffs: &[Complex64], approx: Vec<Complex64>) -> Vec<(Complex64, usize)> {
    let n = approx.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (approx[i] - approx[j]).norm() < CLUSTER_TOL * (1.0 + approx[i].norm()) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &z) in approx.iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(z),
            None => groups.push((r, vec![z])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| {
            let m = g.len();
            let mean = g.iter().sum::<Complex64>() / m as f64;
            (clean(polish(coeffs, mean, m)), m)
        })
        .collect()
}

fn polish(coeffs: &[Complex64], start: Complex64, m: usize) -> Complex64 {
    let mut d = coeffs.to_vec();
    for _ in 1..m {
        d = complex_derivative(&d);
    }
    if d.len() < 2 {
        return start;
    }
    let mut z = start;
    for _ in 0..8 {
        let (p, dp) = horner_with_derivative(&d, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.norm() > CLUSTER_TOL * (1.0 + z.norm()) {
            break;
        }
        z -= step;
        if step.norm() < 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Snaps numerically-zero parts to exact zeros.
fn clean(z: Complex64) -> Complex64 {
    if z.norm() < CLUSTER_TOL {
        return Complex64::new(0.0, 0.0);
    }
    let re = if z.re.abs() <= 1e-12 * z.norm() {
        0.0
    } else {
        z.re
    };
    let im = if z.im.abs() <= 1e-12 * z.norm() {
        0.0
    } else {
        z.im
    };
    Complex64::new(re, im)
}
