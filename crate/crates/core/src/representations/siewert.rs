//! Burniston–Siewert forms: contour integrals around `ζ = 0` reduced to
//! `θ ∈ (0, π)`, the Siewert canonical-function formulas on `(0, ∞)`, and the
//! contour formula for `W₋₁`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{branch_m1_window, finish, scaled, EvalResult, Integral, RepresentationId};
use crate::quadrature::{self, QuadratureSpec, Rule};
use crate::{c64, Error, Result};

/// Radius parameter used by [`super::evaluate`] for [`RepresentationId::BSBranchM1`].
pub const DEFAULT_BRANCH_C: f64 = 1.5;

const INV_2PI: f64 = 0.5 / PI;
const INV_PI: f64 = 1.0 / PI;

/// `(R(θ), I(θ))` with `R = 1 − x·e^{-cos θ}·cos(θ + sin θ)` and
/// `I = x·e^{-cos θ}·sin(θ + sin θ)`.
fn r_and_i(x: f64, th: f64) -> (f64, f64) {
    let (s, c) = th.sin_cos();
    let a = x * (-c).exp();
    let (sp, cp) = (th + s).sin_cos();
    (1.0 - a * cp, a * sp)
}

pub(super) fn log_modulus_integral(x: f64) -> Integral {
    Integral::new(0.0, PI, move |th| {
        let (r, i) = r_and_i(x, th);
        c64(INV_2PI * (r * r + i * i).ln(), 0.0)
    })
}

pub(super) fn arctan_integral(x: f64) -> Integral {
    Integral::new(0.0, PI, move |th| {
        let (r, i) = r_and_i(x, th);
        let (s, c) = th.sin_cos();
        c64(INV_2PI * (2.0 * i.atan2(r) * s - (r * r + i * i).ln() * c), 0.0)
    })
}

fn check_real(rep: RepresentationId, x: f64) -> Result<()> {
    rep.domain().check(c64(x, 0.0))
}

/// `W(x) = (1/2π)∫₀^π ln(R² + I²) dθ` for `x ∈ (-1/e, e)`.
pub fn bs_log_modulus(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::BSLogModulus;
    check_real(rep, x)?;
    let q = log_modulus_integral(x).integrate(spec)?;
    finish(rep, &q, c64(q.value.re, 0.0), q.err_estimate)
}

/// `W(x) = (1/2π)∫₀^π [2·arctan(I/R)·sin θ − ln(R² + I²)·cos θ] dθ`.
pub fn bs_arctan(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::BSArctan;
    check_real(rep, x)?;
    let q = arctan_integral(x).integrate(spec)?;
    finish(rep, &q, c64(q.value.re, 0.0), q.err_estimate)
}

/// Maps `spec` onto the `(0, ∞)` rules: a doubling rule is used as given on
/// the mapped interval, anything else becomes adaptive.
fn semi_infinite_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    let mut s = *spec;
    if s.rule == Rule::SemiInfinite {
        s.rule = Rule::Adaptive;
    }
    s
}

/// `1 + (ln z − 1)·exp(−J)` with its propagated error.
fn siewert_finish(
    rep: RepresentationId,
    l: Complex64,
    q: &quadrature::QuadResult,
) -> Result<EvalResult> {
    let factor = (l - 1.0) * (-q.value).exp();
    finish(rep, q, 1.0 + factor, factor.norm() * q.err_estimate)
}

fn exponent_tol(spec: &QuadratureSpec, l: Complex64) -> QuadratureSpec {
    semi_infinite_spec(&scaled(spec, 1.0 / (l - 1.0).norm().max(1.0)))
}

/// `W(z) = 1 + (ln z − 1)·exp{−(1/π)∫₀^∞ arg(ln z + t − ln t + iπ)/(1 + t) dt}`
/// for `z ∉ (-∞, 0]`.
///
/// For non-real `z` the argument is continued analytically as
/// `[ln(p + iπ) − ln(p − iπ)]/(2i)` with `p = ln z + t − ln t`. Since
/// `Im p = arg z` is constant along the path, both logarithms stay on their
/// principal branches and the expression is analytic in `z`; the literal
/// `arg` is only correct on the real axis.
pub fn bs_siewert_complex(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::BSSiewertComplex;
    rep.domain().check(z)?;
    let l = z.ln();
    let ipi = c64(0.0, PI);
    let q = quadrature::integrate_semi_infinite(
        |t| {
            let p = l + (t - t.ln());
            let a = ((p + ipi).ln() - (p - ipi).ln()) * c64(0.0, -0.5);
            a * INV_PI / (1.0 + t)
        },
        &exponent_tol(spec, l),
    )?;
    siewert_finish(rep, l, &q)
}

/// `W(x) = 1 + (ln x − 1)·exp{−(1/π)∫₀^∞ arctan(π/(ln x + t − ln t))/(1 + t) dt}`
/// for `x > 1/e`.
pub fn bs_siewert_real_arctan(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::BSSiewertReal2;
    check_real(rep, x)?;
    let l = x.ln();
    let q = quadrature::integrate_semi_infinite(
        |t| {
            let p = l + t - t.ln();
            c64(PI.atan2(p) * INV_PI / (1.0 + t), 0.0)
        },
        &exponent_tol(spec, c64(l, 0.0)),
    )?;
    siewert_finish(rep, c64(l, 0.0), &q)
}

/// The integrated-by-parts variant:
/// `W(x) = 1 + (ln x − 1)·exp{−∫₀^∞ (t − 1)/(π² + (ln x + t − ln t)²)·ln(1 + t)/t dt}`.
pub fn bs_siewert_real_parts(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::BSSiewertReal3;
    check_real(rep, x)?;
    let l = x.ln();
    let q = quadrature::integrate_semi_infinite(
        |t| {
            let p = l + t - t.ln();
            let log_ratio = if t == 0.0 { 1.0 } else { t.ln_1p() / t };
            c64((t - 1.0) / (PI * PI + p * p) * log_ratio, 0.0)
        },
        &exponent_tol(spec, c64(l, 0.0)),
    )?;
    siewert_finish(rep, c64(l, 0.0), &q)
}

/// `W₋₁(x) = 1 − 2c − (1/2πi)∮ ln(F(ζ)/ζ) dζ` around `|ζ + c| = c − 1`, with
/// `F(ζ) = ζ − x·e^{-ζ}`, for `c > 1` and `-1/e < x < -(2c−1)·e^{1−2c}`.
///
/// With `ζ = −c + r·e^{iθ}` and conjugate symmetry this becomes
/// `1 − 2c − (r/π)∫₀^π [ln|F/ζ|·cos θ − A(θ)·sin θ] dθ`, where `A` is the
/// argument of `F/ζ` unwrapped continuously from `A(0) = 0`. Nodes are
/// visited in increasing `θ` so the unwrapping is well defined.
pub fn bs_branch_m1(x: f64, c: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::BSBranchM1;
    let Some((lo, hi)) = branch_m1_window(c) else {
        return Err(Error::domain(format!("need c > 1, got {c}")));
    };
    if !(x > lo && x < hi) {
        return Err(Error::domain(format!(
            "x = {x} outside ({lo}, {hi}) for c = {c}"
        )));
    }
    let r = c - 1.0;
    let rule = match spec.rule {
        Rule::MidpointPeriodic => Rule::MidpointPeriodic,
        _ => Rule::GaussLegendre,
    };
    let level_spec = scaled(spec, PI / r);
    let q = quadrature::integrate_levels(rule, 0.0, PI, &level_spec, |pts| {
        let mut acc = quadrature::Accumulator::default();
        let mut prev = 0.0_f64;
        for &(th, w) in pts {
            let zeta = -c + r * Complex64::from_polar(1.0, th);
            let ratio = (zeta - x * (-zeta).exp()) / zeta;
            let mut a = ratio.arg();
            // Unwrap onto the branch continuous with the previous node.
            a += (2.0 * PI) * ((prev - a) / (2.0 * PI)).round();
            prev = a;
            let (s, co) = th.sin_cos();
            let y = ratio.norm().ln() * co - a * s;
            if !y.is_finite() {
                return Err(Error::NonFinite { x: th });
            }
            acc.add(c64(y * w, 0.0));
        }
        Ok(acc.total())
    })?;
    let value = 1.0 - 2.0 * c - r * INV_PI * q.value.re;
    finish(rep, &q, c64(value, 0.0), r * INV_PI * q.err_estimate)
}
