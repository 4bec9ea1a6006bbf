//! Recursive-descent parser for polynomials in `y` with Puiseux coefficients
//! in `x`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' exponent)?
//! exponent:= number | '(' ('+' | '-')? number ('/' number)? ')'
//! primary := number ('/' number)? | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Numbers may carry a decimal point (`0.6` is read as `3/5`). Juxtaposition
//! is not multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polyring::SeriesPolynomial;
use crate::series::{Exponent, PuiseuxSeries};

/// Largest integer power accepted, to keep expansion sizes sane.
const MAX_POWER: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::X => "'x'".into(),
        Tok::Y => "'y'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut digits = src[start..i].to_string();
                let mut scale = 0u32;
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let frac = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == frac {
                        return Err(syntax(i, "expected digits after '.'"));
                    }
                    digits.push_str(&src[frac..i]);
                    scale = (i - frac) as u32;
                }
                let n: BigInt = digits.parse().expect("ascii digits");
                let den = BigInt::from(10u32).pow(scale);
                Tok::Num(BigRational::new(n, den))
            }
            b'x' | b'y' if !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric()) => {
                i += 1;
                if c == b'x' {
                    Tok::X
                } else {
                    Tok::Y
                }
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                i += 1;
                match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    _ => Tok::RParen,
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                return Err(syntax(
                    start,
                    format!("unknown identifier '{}'", &src[start..i]),
                ));
            }
            _ => {
                let ch = src[start..].chars().next().expect("in bounds");
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

/// Sparse bivariate polynomial keyed by (y degree, x exponent).
type Bi = BTreeMap<(u32, Exponent), BigRational>;

fn constant(c: BigRational) -> Bi {
    let mut m = Bi::new();
    if !c.is_zero() {
        m.insert((0, Exponent::zero()), c);
    }
    m
}

fn add_into(acc: &mut Bi, key: (u32, Exponent), c: BigRational) {
    let slot = acc.entry(key).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

fn bi_add(mut a: Bi, b: Bi) -> Bi {
    for (k, c) in b {
        add_into(&mut a, k, c);
    }
    a
}

fn bi_neg(a: Bi) -> Bi {
    a.into_iter().map(|(k, c)| (k, -c)).collect()
}

fn bi_mul(a: &Bi, b: &Bi) -> Bi {
    let mut out = Bi::new();
    for (&(ya, xa), ca) in a {
        for (&(yb, xb), cb) in b {
            add_into(&mut out, (ya + yb, xa + xb), ca * cb);
        }
    }
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!(
                    "expected {}, found {}",
                    describe(&want),
                    describe(self.peek())
                ),
            ))
        }
    }

    fn expr(&mut self) -> Result<Bi> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = bi_add(acc, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = bi_add(acc, bi_neg(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Bi> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            acc = bi_mul(&acc, &rhs);
        }
        match self.peek() {
            Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen => Err(syntax(
                self.pos(),
                format!(
                    "expected operator, found {} (write '*' for products)",
                    describe(self.peek())
                ),
            )),
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Bi> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(bi_neg(self.unary()?))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Bi> {
        let base_pos = self.pos();
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.pos();
        let r = self.exponent()?;
        raise(base, r, base_pos, exp_pos)
    }

    fn exponent(&mut self) -> Result<BigRational> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(n),
            Tok::LParen => {
                let negative = match self.peek() {
                    Tok::Minus => {
                        self.bump();
                        true
                    }
                    Tok::Plus => {
                        self.bump();
                        false
                    }
                    _ => false,
                };
                let mut r = self.number()?;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_pos = self.pos();
                    let den = self.number()?;
                    if den.is_zero() {
                        return Err(Error::NonRationalLiteral {
                            pos: den_pos,
                            message: "division by zero".into(),
                        });
                    }
                    r /= den;
                }
                self.expect(Tok::RParen)?;
                Ok(if negative { -r } else { r })
            }
            other => Err(syntax(
                pos,
                format!("expected exponent, found {}", describe(&other)),
            )),
        }
    }

    fn number(&mut self) -> Result<BigRational> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            other => Err(syntax(
                self.pos(),
                format!("expected number, found {}", describe(&other)),
            )),
        }
    }

    fn primary(&mut self) -> Result<Bi> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(constant(n));
                }
                self.bump();
                let den_pos = self.pos();
                let den = self.number()?;
                if den.is_zero() {
                    return Err(Error::NonRationalLiteral {
                        pos: den_pos,
                        message: "division by zero".into(),
                    });
                }
                Ok(constant(n / den))
            }
            Tok::X => Ok(Bi::from([((0, Exponent::one()), BigRational::one())])),
            Tok::Y => Ok(Bi::from([((1, Exponent::zero()), BigRational::one())])),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Slash => Err(syntax(pos, "division is only allowed between two numbers")),
            other => Err(syntax(
                pos,
                format!("expected expression, found {}", describe(&other)),
            )),
        }
    }
}

fn to_exponent(r: &BigRational, pos: usize) -> Result<Exponent> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) if n.abs() <= 1 << 40 && d <= 1 << 40 => Ok(Exponent::new(n, d)),
        _ => Err(Error::NonRationalLiteral {
            pos,
            message: format!("exponent {r} is out of range"),
        }),
    }
}

fn raise(base: Bi, r: BigRational, base_pos: usize, exp_pos: usize) -> Result<Bi> {
    let has_y = base.keys().any(|(y, _)| *y > 0);
    if r.is_integer() && !r.is_negative() {
        let n = r
            .to_integer()
            .to_u32()
            .filter(|n| *n <= MAX_POWER)
            .ok_or_else(|| Error::NonRationalLiteral {
                pos: exp_pos,
                message: format!("power {r} exceeds the limit of {MAX_POWER}"),
            })?;
        let mut acc = constant(BigRational::one());
        for _ in 0..n {
            acc = bi_mul(&acc, &base);
        }
        return Ok(acc);
    }
    if has_y {
        return Err(Error::NegativeYExponent { pos: exp_pos });
    }
    // the remaining cases only make sense for a single monomial c x^a
    let mut terms = base.into_iter();
    let (Some(((_, a), c)), None) = (terms.next(), terms.next()) else {
        return Err(Error::NonRationalLiteral {
            pos: base_pos,
            message: format!("cannot raise a sum to the power {r}"),
        });
    };
    let a = BigRational::new((*a.numer()).into(), (*a.denom()).into());
    let e = to_exponent(&(a * &r), exp_pos)?;
    let coeff = if r.is_integer() {
        let n = (-r.to_integer())
            .to_u32()
            .filter(|n| *n <= MAX_POWER)
            .ok_or_else(|| Error::NonRationalLiteral {
                pos: exp_pos,
                message: format!("power {r} exceeds the limit of {MAX_POWER}"),
            })?;
        c.recip().pow(n as i32)
    } else if c.is_one() {
        c
    } else {
        return Err(Error::NonRationalLiteral {
            pos: base_pos,
            message: format!("{c} raised to {r} is not rational in general"),
        });
    };
    Ok(Bi::from([((0, e), coeff)]))
}

fn parse_bi(src: &str) -> Result<Bi> {
    let mut parser = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let out = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(syntax(
            parser.pos(),
            format!(
                "expected operator or end of input, found {}",
                describe(parser.peek())
            ),
        ));
    }
    Ok(out)
}

/// Parses and fully expands an expression, collecting coefficients by powers
/// of `y`.
pub fn parse_expression(src: &str) -> Result<SeriesPolynomial<BigRational>> {
    let bi = parse_bi(src)?;
    let degree = bi.keys().map(|(y, _)| *y).max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<(Exponent, BigRational)>> = vec![Vec::new(); degree + 1];
    for ((y, x), c) in bi {
        buckets[y as usize].push((x, c));
    }
    SeriesPolynomial::new(buckets.into_iter().map(PuiseuxSeries::exact).collect())
}

/// Parses an expression free of `y` as a series in `x`.
pub fn parse_series(src: &str) -> Result<PuiseuxSeries<BigRational>> {
    let bi = parse_bi(src)?;
    if let Some(((_, _), _)) = bi.iter().find(|((y, _), _)| *y > 0) {
        return Err(syntax(0, "series must not contain y"));
    }
    Ok(PuiseuxSeries::exact(
        bi.into_iter().map(|((_, x), c)| (x, c)),
    ))
}
