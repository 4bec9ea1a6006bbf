//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use num_rational::BigRational;
use puiseux::baseroots::{multiplicity_report, roots_with_multiplicity};
use puiseux::cli::{run, RunConfig};
use puiseux::lifting::{extract_reduced, s_plus, solve_reduced};
use puiseux::newton::NewtonPolygon;
use puiseux::series::exp;
use puiseux::{
    calculate_smallest_root, classic_newton_puiseux, parse_expression, verify_residual, Coeff,
    Exponent, Order,
};
use rand::Rng;

const INSTANCES: u64 = 200;
const PRECISION: usize = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

fn worked_example() -> Outcome {
    let config = RunConfig {
        precision: 3,
        ..RunConfig::default()
    };
    let out = run(&config, "(y - (1+x+x^2))*(y - (2+x+x^2))");
    let expected =
        "root: 1 + x + x^2\nexact: true\ncertified_order: inf\nresidual_valuation: inf\n";
    outcome(
        out.exit_code == 0 && out.stdout.starts_with(expected),
        format!(
            "exit {}, {}",
            out.exit_code,
            out.stdout.lines().take(4).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn four_roots() -> Outcome {
    let p =
        parse_expression("(y - (1+x+x^2))*(y - x^0.5)*(y - x^0.6)*(y - (x^0.5 - x^2))").unwrap();
    let report =
        multiplicity_report(&roots_with_multiplicity(&p.restrict_at_zero().unwrap()).unwrap());
    let reduced = extract_reduced(&p, report.s).unwrap();
    let roots = solve_reduced(&reduced).unwrap();
    // the same count read off after the vertical shift by e
    let lifted = reduced
        .to_series_polynomial()
        .unwrap()
        .shift_vertical(reduced.e);
    let after_shift =
        multiplicity_report(&roots_with_multiplicity(&lifted.restrict_at_zero().unwrap()).unwrap());
    let branches: usize = after_shift.nonzero.iter().map(|(_, m)| m).sum();
    outcome(
        report.s == 3 && s_plus(&roots) == 2 && branches == 2 && reduced.e == exp(1, 2),
        format!(
            "s = {}, s+ = {}, branches after shift = {}, e = {}",
            report.s,
            s_plus(&roots),
            branches,
            reduced.e
        ),
    )
}

fn golden_lifting_unit() -> Outcome {
    let p = P::from_roots(&[
        S::monomial(q(1), exp(1, 1)),
        S::monomial(q(2), exp(1, 1)),
        S::one(),
    ]);
    let reduced = extract_reduced(&p, 2).unwrap();
    let mut values: Vec<(BigRational, usize)> = solve_reduced(&reduced)
        .unwrap()
        .into_iter()
        .map(|r| (r.value, r.multiplicity))
        .collect();
    values.sort();
    outcome(
        values == vec![(q(1), 1), (q(2), 1)] && reduced.e == exp(1, 1),
        format!(
            "roots {:?} at e = {}",
            values
                .iter()
                .map(|(v, m)| format!("{v} (x{m})"))
                .collect::<Vec<_>>(),
            reduced.e
        ),
    )
}

fn class_a_instances() -> Vec<(Vec<S>, P)> {
    (0..INSTANCES)
        .map(|i| {
            let mut r = rng(0xA000 + i);
            let roots = distinct_roots(&mut r, 5);
            let p = P::from_roots(&roots);
            (roots, p)
        })
        .collect()
}

fn reconstruction(instances: &[(Vec<S>, P)]) -> Outcome {
    let mut failures = Vec::new();
    for (i, (roots, p)) in instances.iter().enumerate() {
        let expected = first_terms(&minimal_root(roots), PRECISION);
        match calculate_smallest_root(p, PRECISION) {
            Ok(out) if out.terms == expected => {}
            Ok(out) => failures.push(format!("#{i}: got {}", out.series())),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    summary(instances.len(), failures)
}

fn residual_growth() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..INSTANCES {
        let mut r = rng(0xB000 + i);
        let roots = distinct_roots(&mut r, 5);
        let mut p = P::from_roots(&roots[..roots.len().min(3)]);
        if i % 2 == 0 {
            p = mul(&p, &sqrt_factor(&mut r));
        }
        let mut previous: Option<Order> = None;
        for d in 1..=6 {
            let out = match calculate_smallest_root(&p, d) {
                Ok(o) => o,
                Err(e) => {
                    failures.push(format!("#{i} d={d}: {e}"));
                    break;
                }
            };
            let residual = verify_residual(&p, &out);
            if previous.is_some_and(|prev| residual <= prev) {
                failures.push(format!(
                    "#{i} d={d}: {residual} after {}",
                    previous.unwrap()
                ));
                break;
            }
            if out.exact {
                if residual != Order::Infinite {
                    failures.push(format!("#{i}: exact root with residual {residual}"));
                }
                break;
            }
            previous = Some(residual);
        }
    }
    summary(INSTANCES as usize, failures)
}

fn shift_identities() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..INSTANCES {
        let mut r = rng(0xC000 + i);
        let p = polynomial(&mut r);
        let c = series(&mut r, 3);
        let e = exp(r.gen_range(-8i64..=8), r.gen_range(1i64..=4));
        if p.shift_horizontal(&c).shift_horizontal(&-c.clone()) != p {
            failures.push(format!("#{i}: horizontal shift by {c}"));
        }
        if p.shift_vertical(e).shift_vertical(-e) != p.clear_common_monomial() {
            failures.push(format!("#{i}: vertical shift by {e}"));
        }
    }
    summary(INSTANCES as usize, failures)
}

fn brute_force_hull(points: &[(usize, Exponent)]) -> Vec<(usize, Exponent)> {
    let n = points.len();
    (0..n)
        .filter(|&k| {
            k == 0
                || k == n - 1
                || (0..k).all(|i| {
                    (k + 1..n).all(|j| {
                        let t = Exponent::new(
                            (points[k].0 - points[i].0) as i64,
                            (points[j].0 - points[i].0) as i64,
                        );
                        points[k].1 < points[i].1 + (points[j].1 - points[i].1) * t
                    })
                })
        })
        .map(|k| points[k])
        .collect()
}

fn newton_hulls() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..INSTANCES {
        let mut r = rng(0xD000 + i);
        let n = r.gen_range(2..=9);
        let mut points: Vec<(usize, Exponent)> = Vec::new();
        for k in 0..n {
            if r.gen_bool(0.8) {
                points.push((k, exp(r.gen_range(-12i64..=12), r.gen_range(1i64..=4))));
            }
        }
        if points.len() < 2 {
            continue;
        }
        let ng = NewtonPolygon::from_points(points.clone()).unwrap();
        if ng.hull != brute_force_hull(&points) {
            failures.push(format!("#{i}: {points:?}"));
        }
    }
    summary(INSTANCES as usize, failures)
}

fn oracle_equivalence(instances: &[(Vec<S>, P)]) -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for (i, (_, p)) in instances.iter().enumerate() {
        let Ok(oracle) = classic_newton_puiseux(p, PRECISION) else {
            continue;
        };
        compared += 1;
        match calculate_smallest_root(p, PRECISION) {
            Ok(out) if oracle.contains(&out.terms) => {}
            Ok(out) => failures.push(format!(
                "#{i}: engine {} not among oracle branches",
                out.series()
            )),
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    summary(compared, failures)
}

#[allow(clippy::approx_constant)]
fn float_sanity() -> Outcome {
    let p = parse_expression("y^2 - 2")
        .unwrap()
        .map_coeffs(Complex64::from_rational);
    match calculate_smallest_root(&p, 2) {
        Ok(out) => {
            let c = out.terms.first().map(|t| t.1).unwrap_or_default();
            let err = (c - Complex64::new(1.41421356, 0.0)).norm();
            outcome(
                err < 1e-8 && out.terms[0].0 == exp(0, 1),
                format!(
                    "constant term {} (|r - 1.41421356| = {err:.2e})",
                    c.render()
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn non_separable() -> Outcome {
    let p = parse_expression("y^2 - 2*x*y + x^2").unwrap();
    match calculate_smallest_root(&p, PRECISION) {
        Ok(out) => outcome(
            out.terms == vec![(exp(1, 1), q(1))]
                && out.exact
                && out.multiplicities == vec![2]
                && out.terms.len() <= PRECISION,
            format!(
                "root {}, exact = {}, multiplicities {:?}",
                out.series(),
                out.exact,
                out.multiplicities
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn summary(total: usize, failures: Vec<String>) -> Outcome {
    let mut detail = format!("{}/{} instances", total - failures.len(), total);
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first failure {first}"));
    }
    outcome(failures.is_empty(), detail)
}

fn main() {
    let mut all_pass = true;
    let mut report =
        |id: &str, name: &str, o: Outcome, elapsed: Duration, limit: Option<Duration>| {
            let in_time = limit.is_none_or(|l| elapsed < l);
            let pass = o.pass && in_time;
            all_pass &= pass;
            let budget = limit.map(|l| format!(" / limit {l:?}")).unwrap_or_default();
            println!(
                "{} criterion {id}: {name}: {} [{:.3?}{budget}]",
                if pass { "PASS" } else { "FAIL" },
                o.detail,
                elapsed
            );
        };

    let (o, t) = timed(worked_example);
    report("1", "worked example", o, t, Some(Duration::from_secs(1)));

    let (o, t) = timed(four_roots);
    report(
        "2",
        "four-root multiplicities",
        o,
        t,
        Some(Duration::from_secs(2)),
    );

    let (o, t) = timed(golden_lifting_unit);
    report("3", "golden lifting unit", o, t, None);

    let suite_start = Instant::now();
    let instances = class_a_instances();
    let (o, t) = timed(|| reconstruction(&instances));
    report("4a", "minimal root reconstruction, d = 4", o, t, None);
    let (o, t) = timed(residual_growth);
    report("4b", "residual valuation grows with d", o, t, None);
    let (o, t) = timed(shift_identities);
    report("4c", "shift identities", o, t, None);
    let (o, t) = timed(newton_hulls);
    report("4d", "Newton polygon vs brute-force hull", o, t, None);
    let suite = suite_start.elapsed();
    report(
        "4",
        "property suite total runtime",
        outcome(true, "classes a-d"),
        suite,
        Some(Duration::from_secs(60)),
    );

    let (o, t) = timed(|| oracle_equivalence(&instances));
    report("5", "oracle equivalence on class a", o, t, None);

    let (o, t) = timed(float_sanity);
    report(
        "6",
        "float mode sqrt(2)",
        o,
        t,
        Some(Duration::from_secs(1)),
    );

    let (o, t) = timed(non_separable);
    report("7", "non-separable (y - x)^2", o, t, None);

    if !all_pass {
        std::process::exit(1);
    }
}
