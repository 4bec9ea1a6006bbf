use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero series has no leading term")]
    ZeroSeries,

    #[error("series has negative valuation; restriction to x = 0 is undefined")]
    NegativeValuation,

    #[error("polynomial is degenerate: {0}")]
    DegeneratePolynomial(String),

    #[error("Newton polygon has no segment with positive slope")]
    NoPositiveSlope,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// Exact-mode root finding hit a factor without rational roots.
    /// Carries the offending polynomial (constant term first).
    #[error("polynomial has roots outside the rationals; retry with `--mode float`")]
    UnsolvableOverField { coeffs: Vec<BigRational> },

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        best: Vec<Complex64>,
    },

    #[error("coefficient series is truncated at x^{0}; the engine needs fully known coefficients")]
    TruncatedInput(String),

    #[error("precision must be at least 1")]
    InvalidPrecision,

    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("exponent of y must be a non-negative integer (at offset {pos})")]
    NegativeYExponent { pos: usize },

    #[error("expression does not denote a rational value (at offset {pos}): {message}")]
    NonRationalLiteral { pos: usize, message: String },
}

impl Error {
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::NegativeYExponent { .. }
                | Error::NonRationalLiteral { .. }
        )
    }
}
