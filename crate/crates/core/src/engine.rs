//! The iteration driver.
//!
//! The engine keeps the working polynomial in a coordinate `y'` related to the
//! original variable by `y = A(x) + x^L · y'`, where `A` is the sum of the root
//! terms found so far and `L` is the accumulated vertical lift. Every freshly
//! found term is a constant in the current coordinate, so advancing the
//! expansion is always a horizontal shift by a constant. After that shift the
//! roots continuing the chosen branch are exactly the roots of positive
//! valuation, which is the shape golden lifting needs.
//!
//! The loop body is:
//!
//! 1. shift the newest term to zero and stop if `y' = 0` is now a root;
//! 2. read `s`, the number of branch roots, off `Q|_{x=0}`;
//! 3. if every root belongs to the branch, normalize with a vertical shift by
//!    the smallest positive Newton slope and read the next term at `x = 0`;
//! 4. otherwise golden-lift to get the next term and its valuation `e`, then
//!    vertical-shift by `e` so the new term becomes a constant.

use num_traits::Zero;

use crate::baseroots::{multiplicity_report, roots_with_multiplicity};
use crate::error::{Error, Result};
use crate::lifting::{extract_reduced, solve_reduced};
use crate::newton::NewtonPolygon;
use crate::polyring::SeriesPolynomial;
use crate::scalar::Coeff;
use crate::series::{Exponent, Order, PuiseuxSeries};

/// One computed root term.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord<C> {
    pub coefficient: C,
    /// Exponent in the original variable.
    pub exponent: Exponent,
    /// Number of roots sharing the expansion up to and including this term.
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineState<C> {
    /// Remaining term budget.
    pub d: usize,
    pub root_records: Vec<RootRecord<C>>,
    /// Accumulated vertical lift `L`.
    pub x_lift: Exponent,
}

impl<C: Coeff> EngineState<C> {
    pub fn new(d: usize) -> Self {
        EngineState {
            d,
            root_records: Vec::new(),
            x_lift: Exponent::zero(),
        }
    }

    fn record(&mut self, coefficient: C, multiplicity: usize) -> Result<()> {
        if self.d == 0 {
            return Err(Error::HypothesisViolation(
                "term recorded with an exhausted precision budget".into(),
            ));
        }
        if let Some(last) = self.root_records.last() {
            if last.exponent >= self.x_lift {
                return Err(Error::HypothesisViolation(
                    "root exponents must strictly increase".into(),
                ));
            }
        }
        self.root_records.push(RootRecord {
            coefficient,
            exponent: self.x_lift,
            multiplicity,
        });
        self.d -= 1;
        Ok(())
    }

    pub fn last_record(&self) -> Option<&RootRecord<C>> {
        self.root_records.last()
    }
}

/// A truncated expansion of one root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootExpansion<C> {
    pub terms: Vec<(Exponent, C)>,
    /// Branch multiplicity attached to each term.
    pub multiplicities: Vec<usize>,
    /// The expansion is an exact root.
    pub exact: bool,
    /// Exponent of the first term not yet computed; `+∞` when exact.
    pub certified_order: Order,
}

impl<C: Coeff> RootExpansion<C> {
    pub fn series(&self) -> PuiseuxSeries<C> {
        PuiseuxSeries::exact(self.terms.iter().cloned())
    }
}

/// Expansion (up to `d` terms) of a root of minimal valuation. Ties in
/// valuation are broken by the branch order on leading coefficients.
pub fn calculate_smallest_root<C: Coeff>(
    p: &SeriesPolynomial<C>,
    d: usize,
) -> Result<RootExpansion<C>> {
    if d == 0 {
        return Err(Error::InvalidPrecision);
    }
    if let Some(a) = p.coeffs().iter().find(|a| !a.is_exact()) {
        return Err(Error::TruncatedInput(a.trunc_order().to_string()));
    }
    if p.degree() == 0 {
        return Err(Error::DegeneratePolynomial(
            "polynomial has degree 0 in y".into(),
        ));
    }

    // zero roots have valuation +inf; they are the answer only if nothing else is left
    let (reduced, _) = p.factor_out_zero_roots();
    if reduced.degree() == 0 {
        return Ok(RootExpansion {
            terms: Vec::new(),
            multiplicities: Vec::new(),
            exact: true,
            certified_order: Order::Infinite,
        });
    }
    let mut work = reduced.clear_common_monomial();
    let mut state = EngineState::new(d);

    // roots of negative valuation: lift the smallest ones to valuation 0
    let lowest = NewtonPolygon::build(&work)?.min_slope();
    if lowest < Exponent::zero() {
        work = work.shift_vertical(lowest);
        state.x_lift = lowest;
    }

    let mut p_shift = calculate_initial_shift(&work, &mut state)?;
    let exact = loop {
        let last = state
            .last_record()
            .cloned()
            .expect("initial shift records a term");
        p_shift = p_shift.shift_horizontal(&PuiseuxSeries::constant(last.coefficient.clone()));
        if p_shift.coeff(0).is_zero() {
            break true;
        }
        if state.d == 0 {
            break false;
        }
        let s = p_shift.restrict_at_zero()?.lowest_index();
        if s != last.multiplicity {
            return Err(Error::HypothesisViolation(format!(
                "expected {} branch roots after the shift, found {s}",
                last.multiplicity
            )));
        }
        if s == 0 {
            break false;
        }
        if s == p_shift.degree() {
            p_shift = calculate_initial_shift(&p_shift, &mut state)?;
        } else {
            let before = state.x_lift;
            golden_lifting_step(&p_shift, s, &mut state)?;
            p_shift = p_shift.shift_vertical(state.x_lift - before);
        }
    };

    let certified_order = if exact {
        Order::Infinite
    } else {
        match NewtonPolygon::build(&p_shift).and_then(|ng| ng.min_nonzero_slope()) {
            Ok(e) => Order::Finite(state.x_lift + e),
            Err(_) => Order::Finite(state.x_lift),
        }
    };
    let multiplicities = state.root_records.iter().map(|r| r.multiplicity).collect();
    Ok(RootExpansion {
        terms: assemble_root(&state).terms().to_vec(),
        multiplicities,
        exact,
        certified_order,
    })
}

/// Records a root of `p|_{x=0}` if one is nonzero and returns `p` unchanged;
/// otherwise every root has positive valuation, so the roots are scaled by
/// `x^{-e}` with `e` the smallest positive Newton slope and the process
/// repeats on the scaled polynomial, which is returned.
pub fn calculate_initial_shift<C: Coeff>(
    p: &SeriesPolynomial<C>,
    state: &mut EngineState<C>,
) -> Result<SeriesPolynomial<C>> {
    let restricted = p.restrict_at_zero()?;
    let report = multiplicity_report(&roots_with_multiplicity(&restricted)?);
    if let Some((c, m)) = report.first_nonzero() {
        state.record(c.clone(), *m)?;
        return Ok(p.clone());
    }
    let e = NewtonPolygon::build(p)?.min_nonzero_slope()?;
    let p_shift = p.shift_vertical(e);
    state.x_lift += e;
    calculate_initial_shift(&p_shift, state)
}

/// Same control flow as [`calculate_initial_shift`], keeping only the effect
/// on `state`.
pub fn calculate_smallest_root_q_x<C: Coeff>(
    p: &SeriesPolynomial<C>,
    state: &mut EngineState<C>,
) -> Result<()> {
    calculate_initial_shift(p, state).map(|_| ())
}

/// One golden-lifting step on `p_shift`, whose `s` positive-valuation roots
/// continue the current branch. Appends the next term and raises `x_lift` by
/// the valuation `e` of that term.
pub fn golden_lifting_step<C: Coeff>(
    p_shift: &SeriesPolynomial<C>,
    s: usize,
    state: &mut EngineState<C>,
) -> Result<()> {
    let reduced = extract_reduced(p_shift, s)?;
    let roots = solve_reduced(&reduced)?;
    let nonzero: Vec<_> = roots.iter().filter(|r| !r.is_zero_root).collect();
    let chosen = nonzero
        .iter()
        .min_by(|a, b| a.value.branch_cmp(&b.value))
        .ok_or_else(|| {
            Error::HypothesisViolation("reduced polynomial has only zero roots".into())
        })?;

    let single_root = nonzero.len() == 1 && chosen.multiplicity == s;
    if chosen.multiplicity > 1 && !single_root {
        let before = state.x_lift;
        calculate_smallest_root_q_x(&reduced.to_series_polynomial()?, state)?;
        let last = state.last_record().expect("q_x records a term");
        if state.x_lift - before != reduced.e || !last.coefficient.approx_eq(&chosen.value) {
            return Err(Error::HypothesisViolation(
                "reduced polynomial resolved to a different branch".into(),
            ));
        }
        Ok(())
    } else {
        state.x_lift += reduced.e;
        state.record(chosen.value.clone(), chosen.multiplicity)
    }
}

/// The root found so far, with every exponent in the original variable.
pub fn assemble_root<C: Coeff>(state: &EngineState<C>) -> PuiseuxSeries<C> {
    PuiseuxSeries::exact(
        state
            .root_records
            .iter()
            .map(|r| (r.exponent, r.coefficient.clone())),
    )
}

/// `v(p(α̂))`; `+∞` when the expansion is an exact root.
pub fn verify_residual<C: Coeff>(p: &SeriesPolynomial<C>, expansion: &RootExpansion<C>) -> Order {
    p.evaluate(&expansion.series()).valuation()
}
