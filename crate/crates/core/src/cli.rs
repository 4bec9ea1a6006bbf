//! Command execution behind the `puiseux` binary: parse, solve, report.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::engine::{calculate_smallest_root, verify_residual, RootExpansion};
use crate::error::Error;
use crate::oracle::classic_newton_puiseux;
use crate::parse::parse_expression;
use crate::polyring::{squarefree_part, SeriesPolynomial};
use crate::scalar::{Coeff, FieldMode};
use crate::series::{fmt_exponent, Order};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSOLVABLE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub precision: usize,
    pub field_mode: FieldMode,
    pub output_format: OutputFormat,
    pub squarefree_prepass: bool,
    pub oracle_check: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 4,
            field_mode: FieldMode::Exact,
            output_format: OutputFormat::Text,
            squarefree_prepass: false,
            oracle_check: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn failure(err: &Error, exit_code: i32) -> Self {
        RunOutcome {
            exit_code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermReport {
    pub coefficient: String,
    pub exponent_num: i64,
    pub exponent_den: i64,
}

/// The structured report; fields serialize in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input: String,
    pub precision: usize,
    pub field_mode: FieldMode,
    pub terms: Vec<TermReport>,
    pub exact: bool,
    pub certified_order: String,
    pub residual_valuation: String,
    pub branch_multiplicities: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<bool>,
    #[serde(skip)]
    pub root: String,
    #[serde(skip)]
    pub oracle_note: Option<String>,
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "root: {}\nexact: {}\ncertified_order: {}\nresidual_valuation: {}\nbranch_multiplicities: {:?}\n",
            self.root, self.exact, self.certified_order, self.residual_valuation, self.branch_multiplicities
        );
        match (self.oracle_agreement, &self.oracle_note) {
            (Some(true), _) => out.push_str("oracle: agrees\n"),
            (Some(false), _) => out.push_str("oracle: DISAGREES\n"),
            (None, Some(note)) => out.push_str(&format!("oracle: unavailable ({note})\n")),
            (None, None) => {}
        }
        out
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        e if e.is_parse_error() => EXIT_PARSE,
        Error::DegeneratePolynomial(_) | Error::InvalidPrecision => EXIT_PARSE,
        Error::UnsolvableOverField { .. } => EXIT_UNSOLVABLE,
        _ => EXIT_INTERNAL,
    }
}

fn prepare(config: &RunConfig, src: &str) -> Result<SeriesPolynomial<BigRational>, Error> {
    if config.precision == 0 {
        return Err(Error::InvalidPrecision);
    }
    let p = parse_expression(src)?;
    if p.degree() == 0 {
        return Err(Error::DegeneratePolynomial(
            "expression does not involve y".into(),
        ));
    }
    if config.squarefree_prepass {
        squarefree_part(&p)
    } else {
        Ok(p)
    }
}

fn solve<C: Coeff>(
    config: &RunConfig,
    src: &str,
    p: &SeriesPolynomial<C>,
) -> Result<Report, Error> {
    let expansion: RootExpansion<C> = calculate_smallest_root(p, config.precision)?;
    let residual = verify_residual(p, &expansion);
    let (oracle_agreement, oracle_note) = if config.oracle_check {
        match classic_newton_puiseux(p, config.precision) {
            Ok(o) => (Some(o.contains(&expansion.terms)), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    Ok(Report {
        input: src.to_string(),
        precision: config.precision,
        field_mode: config.field_mode,
        terms: expansion
            .terms
            .iter()
            .map(|(e, c)| TermReport {
                coefficient: c.render(),
                exponent_num: *e.numer(),
                exponent_den: *e.denom(),
            })
            .collect(),
        exact: expansion.exact,
        certified_order: render_order(expansion.certified_order),
        residual_valuation: render_order(residual),
        branch_multiplicities: expansion.multiplicities.clone(),
        oracle_agreement,
        root: expansion.series().to_string(),
        oracle_note,
    })
}

fn render_order(o: Order) -> String {
    match o {
        Order::Finite(e) => fmt_exponent(e),
        Order::Infinite => "inf".into(),
    }
}

/// Computes the report for `src` without formatting it.
pub fn report(config: &RunConfig, src: &str) -> Result<Report, Error> {
    let p = prepare(config, src)?;
    match config.field_mode {
        FieldMode::Exact => solve(config, src, &p),
        FieldMode::Float => solve(config, src, &p.map_coeffs(Complex64::from_rational)),
    }
}

pub fn run(config: &RunConfig, src: &str) -> RunOutcome {
    let report = match report(config, src) {
        Ok(r) => r,
        Err(e) => return RunOutcome::failure(&e, exit_code_for(&e)),
    };
    let stdout = match config.output_format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Structured => report.to_structured(),
    };
    if report.oracle_agreement == Some(false) {
        return RunOutcome {
            exit_code: EXIT_INTERNAL,
            stdout,
            stderr: "error: engine result is not among the oracle's minimal-valuation branches\n"
                .into(),
        };
    }
    RunOutcome {
        exit_code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

fn oracle_lines<C: Coeff>(config: &RunConfig, p: &SeriesPolynomial<C>) -> Result<String, Error> {
    let o = classic_newton_puiseux(p, config.precision)?;
    Ok(o.branches
        .iter()
        .map(|b| {
            let body = b.expansion.series();
            let tail = if b.expansion.exact {
                String::new()
            } else {
                format!(" + O(x^{})", render_order(b.expansion.certified_order))
            };
            format!("multiplicity {}: {body}{tail}\n", b.multiplicity)
        })
        .collect())
}

/// Lists every branch found by the classic Newton–Puiseux recursion.
pub fn run_oracle(config: &RunConfig, src: &str) -> RunOutcome {
    let lines = prepare(config, src).and_then(|p| match config.field_mode {
        FieldMode::Exact => oracle_lines(config, &p),
        FieldMode::Float => oracle_lines(config, &p.map_coeffs(Complex64::from_rational)),
    });
    match lines {
        Ok(stdout) => RunOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => RunOutcome::failure(&e, exit_code_for(&e)),
    }
}
