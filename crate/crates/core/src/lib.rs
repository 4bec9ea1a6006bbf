//! Truncated Puiseux-series expansions of roots of polynomials whose
//! coefficients are themselves Puiseux series in `x`.
//!
//! The main entry point is [`calculate_smallest_root`], which expands a root
//! of minimal valuation by golden lifting. [`classic_newton_puiseux`] computes
//! every branch by the textbook polygon recursion and is used to cross-check
//! the engine.

pub mod baseroots;
pub mod cli;
pub mod engine;
pub mod error;
pub mod lifting;
pub mod newton;
pub mod oracle;
pub mod parse;
pub mod polyring;
pub mod scalar;
pub mod series;
mod upoly;

pub use engine::{calculate_smallest_root, verify_residual, RootExpansion};
pub use error::{Error, Result};
pub use oracle::{classic_newton_puiseux, OracleExpansion};
pub use parse::{parse_expression, parse_series};
pub use polyring::{BasePolynomial, SeriesPolynomial};
pub use scalar::{Coeff, FieldMode};
pub use series::{Exponent, Order, PuiseuxSeries};
