use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use lwik::analysis::{
    cm_check, closing_identities, default_cm_grid, nuttall_identity, pade_staircase_report, CmFunction,
    IdentityResult,
};
use lwik::quadrature::{QuadratureSpec, Rule};
use lwik::representations::{evaluate, EvalResult, RepresentationId};
use lwik::{Complex64, Error};

use crate::output::{self, Format, C};
use crate::{Failure, EXIT_CHECK_FAILED};

fn spec_for(rep: RepresentationId, tol: f64, rule: Option<Rule>) -> Result<QuadratureSpec, Failure> {
    let spec = match rule {
        Some(rule) => QuadratureSpec::for_rule(rule, tol),
        None => rep.default_spec(tol),
    };
    spec.validate()?;
    Ok(spec)
}

#[derive(Serialize)]
struct EvalRecord {
    rep: &'static str,
    target: &'static str,
    rule: &'static str,
    z: C,
    value: C,
    err_estimate: f64,
    nodes: usize,
    abs_err_vs_oracle: Option<f64>,
}

pub fn eval(
    out: &mut impl Write,
    rep: RepresentationId,
    z: Complex64,
    tol: f64,
    rule: Option<Rule>,
    format: Format,
) -> Result<u8, Failure> {
    let spec = spec_for(rep, tol, rule)?;
    let r = evaluate(rep, z, &spec)?;
    let oracle = rep.target().oracle(z).ok();
    let rec = EvalRecord {
        rep: rep.name(),
        target: rep.target().name(),
        rule: spec.rule.name(),
        z: z.into(),
        value: r.value.into(),
        err_estimate: r.err_estimate,
        nodes: r.nodes_used,
        abs_err_vs_oracle: oracle.map(|w| (r.value - w).norm()),
    };
    output::record(out, format, &rec)?;
    Ok(0)
}

/// What became of one evaluation, in a form every table can share.
struct Attempt {
    status: &'static str,
    value: Option<Complex64>,
    err_estimate: Option<f64>,
    nodes: Option<usize>,
    message: Option<String>,
}

impl Attempt {
    fn from_result(r: &lwik::Result<EvalResult>) -> Attempt {
        match r {
            Ok(r) => Attempt {
                status: "ok",
                value: Some(r.value),
                err_estimate: Some(r.err_estimate),
                nodes: Some(r.nodes_used),
                message: None,
            },
            Err(Error::NotConverged { value, err_estimate, nodes }) => Attempt {
                status: "not-converged",
                value: Some(*value),
                err_estimate: Some(*err_estimate),
                nodes: Some(*nodes),
                message: None,
            },
            Err(e) => Attempt {
                status: if e.is_domain() { "out-of-domain" } else { "error" },
                value: None,
                err_estimate: None,
                nodes: None,
                message: Some(e.to_string()),
            },
        }
    }

    fn abs_err(&self, rep: RepresentationId, z: Complex64) -> Option<f64> {
        let w = rep.target().oracle(z).ok()?;
        self.value.map(|v| (v - w).norm())
    }
}

fn timed(rep: RepresentationId, z: Complex64, spec: &QuadratureSpec) -> (lwik::Result<EvalResult>, Duration) {
    let t0 = Instant::now();
    let r = evaluate(rep, z, spec);
    (r, t0.elapsed())
}

#[derive(Serialize)]
struct ComparisonRow {
    rep: &'static str,
    target: &'static str,
    z: C,
    status: &'static str,
    value: C,
    abs_err_vs_oracle: Option<f64>,
    err_estimate: Option<f64>,
    nodes: Option<usize>,
    wall_time_ns: Option<u64>,
    message: Option<String>,
}

/// Every `(point, rep)` pair, evaluated in parallel and reported in input
/// order. Wall time is left out unless `timing` is set so that repeated runs
/// produce identical output.
pub fn compare(
    out: &mut impl Write,
    reps: &[RepresentationId],
    points: &[Complex64],
    tol: f64,
    rule: Option<Rule>,
    timing: bool,
    format: Format,
) -> Result<u8, Failure> {
    let specs = reps
        .iter()
        .map(|&r| spec_for(r, tol, rule))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(Complex64, RepresentationId, QuadratureSpec)> = points
        .iter()
        .flat_map(|&z| reps.iter().zip(&specs).map(move |(&r, &s)| (z, r, s)))
        .collect();
    let rows: Vec<ComparisonRow> = jobs
        .par_iter()
        .map(|&(z, rep, spec)| {
            let (r, dt) = timed(rep, z, &spec);
            let a = Attempt::from_result(&r);
            ComparisonRow {
                rep: rep.name(),
                target: rep.target().name(),
                z: z.into(),
                status: a.status,
                value: a.value.map_or(C::MISSING, C::from),
                abs_err_vs_oracle: a.abs_err(rep, z),
                err_estimate: a.err_estimate,
                nodes: a.nodes,
                wall_time_ns: timing.then_some(dt.as_nanos() as u64),
                message: a.message,
            }
        })
        .collect();
    output::table(out, format, &rows)?;
    Ok(0)
}

#[derive(Serialize)]
struct BenchRow {
    rep: &'static str,
    z: C,
    tol: f64,
    rule: &'static str,
    status: &'static str,
    nodes: Option<usize>,
    err_estimate: Option<f64>,
    abs_err_vs_oracle: Option<f64>,
    wall_time_ns: u64,
}

/// Sequential on purpose: timings are only meaningful without contention.
pub fn bench(
    out: &mut impl Write,
    reps: &[RepresentationId],
    z: Complex64,
    tols: &[f64],
    rule: Option<Rule>,
    samples: usize,
    format: Format,
) -> Result<u8, Failure> {
    let mut rows = Vec::new();
    for &rep in reps {
        for &tol in tols {
            let spec = spec_for(rep, tol, rule)?;
            let (first, dt) = timed(rep, z, &spec);
            let mut times = vec![dt];
            for _ in 1..samples {
                times.push(timed(rep, z, &spec).1);
            }
            times.sort();
            let a = Attempt::from_result(&first);
            rows.push(BenchRow {
                rep: rep.name(),
                z: z.into(),
                tol,
                rule: spec.rule.name(),
                status: a.status,
                nodes: a.nodes,
                err_estimate: a.err_estimate,
                abs_err_vs_oracle: a.abs_err(rep, z),
                wall_time_ns: times[times.len() / 2].as_nanos() as u64,
            });
        }
    }
    output::table(out, format, &rows)?;
    Ok(0)
}

#[derive(Serialize)]
struct IdentityRow {
    name: String,
    computed: f64,
    expected: f64,
    abs_error: f64,
    rel_error: f64,
    /// Which error is held to the tolerance.
    criterion: &'static str,
    err_estimate: f64,
    status: &'static str,
    pass: bool,
}

impl IdentityRow {
    fn new(r: &IdentityResult, relative: bool, tol: f64) -> IdentityRow {
        let residual = if relative { r.rel_error() } else { r.abs_error() };
        let pass = residual <= tol;
        IdentityRow {
            name: r.name.clone(),
            computed: r.computed,
            expected: r.expected,
            abs_error: r.abs_error(),
            rel_error: r.rel_error(),
            criterion: if relative { "relative" } else { "absolute" },
            err_estimate: r.err_estimate,
            status: if pass { "pass" } else { "fail" },
            pass,
        }
    }

    /// A quadrature that stopped short still has a best estimate to report.
    fn unconverged(name: String, err: &Error, expected: f64, relative: bool) -> Option<IdentityRow> {
        let Error::NotConverged { value, err_estimate, .. } = err else {
            return None;
        };
        let abs_error = (value.re - expected).abs();
        Some(IdentityRow {
            name,
            computed: value.re,
            expected,
            abs_error,
            rel_error: abs_error / expected.abs(),
            criterion: if relative { "relative" } else { "absolute" },
            err_estimate: *err_estimate,
            status: "not-converged",
            pass: false,
        })
    }
}

fn nuttall_expected(nu: u32) -> f64 {
    (1..=nu).fold(std::f64::consts::PI, |acc, k| acc * f64::from(nu) / f64::from(k))
}

pub fn identities(out: &mut impl Write, nus: &[u32], closing: bool, tol: f64, format: Format) -> Result<u8, Failure> {
    let spec = QuadratureSpec::midpoint(tol);
    let mut rows = Vec::new();
    for &nu in nus {
        match nuttall_identity(nu, &spec) {
            Ok(r) => rows.push(IdentityRow::new(&r, true, tol)),
            Err(e) => rows.push(
                IdentityRow::unconverged(format!("nuttall(nu={nu})"), &e, nuttall_expected(nu), true)
                    .ok_or(Failure::Lib(e))?,
            ),
        }
    }
    if closing {
        match closing_identities(&spec) {
            Ok(rs) => rows.extend(rs.iter().map(|r| IdentityRow::new(r, false, tol))),
            Err(e @ Error::NotConverged { .. }) => {
                eprintln!("closing identities: {e}");
                rows.push(IdentityRow::unconverged("closing".into(), &e, f64::NAN, false).expect("not converged"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    output::table(out, format, &rows)?;
    Ok(if rows.iter().all(|r| r.pass) { 0 } else { EXIT_CHECK_FAILED })
}

fn pade_label(l: usize, m: usize) -> String {
    format!("[{l}/{m}]")
}

pub fn pade(out: &mut impl Write, m_max: usize, format: Format) -> Result<u8, Failure> {
    let report = pade_staircase_report(m_max)?;
    let poles: Vec<Value> = report
        .approximants
        .iter()
        .flat_map(|p| {
            p.poles.iter().enumerate().map(move |(k, z)| {
                json!({ "approximant": pade_label(p.l, p.m), "l": p.l, "m": p.m, "index": k, "pole": C::from(*z) })
            })
        })
        .collect();
    let checks: Vec<Value> = report
        .pole_checks
        .iter()
        .map(|c| {
            json!({
                "approximant": pade_label(c.l, c.m),
                "max_abs_imag": c.max_abs_imag,
                "rightmost": c.rightmost,
                "hard": c.hard,
                "pass": c.pass,
            })
        })
        .collect();
    let interlacing: Vec<Value> = report
        .interlacing
        .iter()
        .map(|c| {
            json!({
                "first": pade_label(c.first.0, c.first.1),
                "second": pade_label(c.second.0, c.second.1),
                "relation": if c.first.1 == c.second.1 { "alternate" } else { "interlace" },
                "min_gap": c.min_gap,
                "pass": c.pass,
            })
        })
        .collect();
    let pass = report.pass();
    let summary = json!({ "m_max": m_max, "pass": pass });
    output::sections(
        out,
        format,
        &[
            ("summary", summary),
            ("poles", Value::Array(poles)),
            ("pole_checks", Value::Array(checks)),
            ("interlacing", Value::Array(interlacing)),
        ],
    )?;
    Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
}

/// The named corpus member with explicit parameters, or its first corpus
/// instance when none are given.
fn cm_function(id: &str, params: Option<Vec<f64>>) -> lwik::Result<CmFunction> {
    match params {
        Some(p) => CmFunction::from_id(id, &p),
        None => CmFunction::stieltjes_corpus()
            .into_iter()
            .chain(CmFunction::cm_corpus())
            .find(|f| f.id() == id)
            .map_or_else(|| CmFunction::from_id(id, &[]), Ok),
    }
}

pub fn cm(
    out: &mut impl Write,
    id: &str,
    params: Option<Vec<f64>>,
    order: usize,
    grid: Option<Vec<f64>>,
    format: Format,
) -> Result<u8, Failure> {
    let f = cm_function(id, params).map_err(|e| match e {
        Error::InvalidSpec(msg) => Failure::Usage(msg),
        e => e.into(),
    })?;
    let grid = grid.unwrap_or_else(default_cm_grid);
    let report = cm_check(&f, order, &grid)?;
    let orders: Vec<Value> = (0..=order)
        .map(|n| {
            let v: Vec<_> = report.violations.iter().filter(|v| v.order == n).collect();
            let worst = v.iter().min_by(|a, b| a.value.total_cmp(&b.value));
            json!({
                "order": n,
                "points": grid.len(),
                "violations": v.len(),
                "worst_x": worst.map(|w| w.x),
                "worst_value": worst.map(|w| w.value),
                "pass": v.is_empty(),
            })
        })
        .collect();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "order": v.order, "x": v.x, "value": v.value }))
        .collect();
    let summary = json!({
        "function": report.function_id,
        "orders_checked": report.orders_checked,
        "points": grid.len(),
        "pass": report.pass(),
        "first_failing_order": report.first_failing_order(),
        "max_margin": report.max_margin,
    });
    let mut parts = vec![("summary", summary), ("orders", Value::Array(orders))];
    if format == Format::Json || !violations.is_empty() {
        parts.push(("violations", Value::Array(violations)));
    }
    output::sections(out, format, &parts)?;
    Ok(if report.pass() { 0 } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nuttall_expected_values() {
        use std::f64::consts::PI;
        assert!((nuttall_expected(1) - PI).abs() < 1e-15);
        assert!((nuttall_expected(3) - 4.5 * PI).abs() < 1e-14);
    }

    #[test]
    fn default_cm_parameters() {
        assert_eq!(cm_function("w", None).unwrap().id(), "w");
        assert!(cm_function("s-a", None).unwrap().params_admissible());
        assert!(matches!(cm_function("nope", None), Err(Error::InvalidSpec(_))));
        assert!(cm_function("s-a", Some(vec![])).is_err());
    }

    #[test]
    fn compare_is_deterministic() {
        let reps = [RepresentationId::ThorinW, RepresentationId::Poisson1];
        let points = [lwik::c64(1.0, 0.0), lwik::c64(-0.5, 0.0), lwik::c64(2.0, 1.0)];
        let run = || {
            let mut buf = Vec::new();
            compare(&mut buf, &reps, &points, 1e-10, None, false, Format::Csv).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = run();
        assert_eq!(a, run());
        assert_eq!(a.lines().count(), 7);
        assert!(a.contains("out-of-domain"));
    }
}
