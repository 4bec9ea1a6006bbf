//! Dense univariate polynomials over the rationals, constant term first.
//!
//! Internal helper for square-free decomposition and polynomial gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type UPoly = Vec<BigRational>;

pub(crate) fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub(crate) fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn is_zero(p: &[BigRational]) -> bool {
    degree(p).is_none()
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x + y
            })
            .collect(),
    )
}

pub(crate) fn neg(a: &[BigRational]) -> UPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> UPoly {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> UPoly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[BigRational], c: &BigRational) -> UPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Quotient and remainder; panics on division by zero.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = &b[db];
    let mut rem = trim(a.to_vec());
    let Some(da) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); da - db + 1];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let k = dr - db;
        let f = &rem[dr] / lead;
        for (i, c) in b[..=db].iter().enumerate() {
            rem[i + k] -= &f * c;
        }
        rem[dr] = BigRational::zero();
        quo[k] = f;
        rem = trim(rem);
    }
    (trim(quo), rem)
}

pub(crate) fn monic(a: &[BigRational]) -> UPoly {
    match degree(a) {
        Some(d) => scale(a, &(BigRational::one() / &a[d])),
        None => Vec::new(),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> UPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero(&y) {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub(crate) fn derivative(a: &[BigRational]) -> UPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub(crate) fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Yun's square-free decomposition: returns `(f_i, i)` with `a = lc · Π f_i^i`,
/// each `f_i` monic, square-free and of positive degree.
pub(crate) fn squarefree_decomposition(a: &[BigRational]) -> Vec<(UPoly, usize)> {
    let a = monic(a);
    if degree(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let da = derivative(&a);
    let c = gcd(&a, &da);
    let mut w = divrem(&a, &c).0;
    let mut y = divrem(&da, &c).0;
    let mut z = sub(&y, &derivative(&w));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let g = gcd(&w, &z);
        if degree(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = divrem(&w, &g).0;
        y = divrem(&z, &g).0;
        z = sub(&y, &derivative(&w));
        i += 1;
    }
    out
}

/// Scales to integer coefficients with content 1 and positive leading term.
pub(crate) fn primitive_integer(a: &[BigRational]) -> Vec<BigInt> {
    let a = trim(a.to_vec());
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.iter().map(|c| c / &g * &sign).collect()
}
