//! Poisson-type real integrals for `W(x)` on `(-1/e, e)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{finish, EvalResult, Integral, RepresentationId};
use crate::quadrature::{self, QuadratureSpec};
use crate::{c64, Result};

const TWO_OVER_PI: f64 = 2.0 / PI;
const TINY: f64 = 1e-300;

fn guarded(num: f64, den: f64) -> Complex64 {
    if den.abs() < TINY {
        c64(f64::NAN, 0.0)
    } else {
        c64(num / den, 0.0)
    }
}

pub(super) fn poisson1_integral(x: f64) -> Integral {
    Integral::new(0.0, PI, move |th| {
        let (s, c) = th.sin_cos();
        let a = x * (-c).exp();
        let num = (1.5 * th).cos() - a * (2.5 * th + s).cos();
        let den = 1.0 - 2.0 * a * (th + s).cos() + a * a;
        guarded(TWO_OVER_PI * num * (0.5 * th).cos(), den)
    })
}

pub(super) fn poisson2_integral(x: f64) -> Integral {
    Integral::new(0.0, PI, move |th| {
        let (s, c) = th.sin_cos();
        let a = x * c.exp();
        let num = (1.5 * th).sin() + a * (2.5 * th - s).sin();
        let den = 1.0 + 2.0 * a * (th - s).cos() + a * a;
        guarded(-TWO_OVER_PI * num * (0.5 * th).sin(), den)
    })
}

fn check_real(rep: RepresentationId, x: f64) -> Result<()> {
    rep.domain().check(c64(x, 0.0))
}

/// Cosine-kernel Poisson integral, valid for `x ∈ (-1/e, e)`.
pub fn poisson_1(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::Poisson1;
    check_real(rep, x)?;
    let q = poisson1_integral(x).integrate(spec)?;
    finish(rep, &q, c64(q.value.re, 0.0), q.err_estimate)
}

/// Sine-kernel Poisson integral, valid for `x ∈ (-1/e, e)`.
pub fn poisson_2(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::Poisson2;
    check_real(rep, x)?;
    let q = poisson2_integral(x).integrate(spec)?;
    finish(rep, &q, c64(q.value.re, 0.0), q.err_estimate)
}

/// `W(x) = ψ(x) + (2/π)∫₀^π [cos(θ/2) + θ·sin(3θ/2) − cos(3θ/2)·ln x]·cos(θ/2)
/// / [1 + 2θ·sin θ + θ² − 2·cos θ·ln x + ln² x] dθ` for `0 < x < e`, where
/// `ψ(x) = ∫₀¹ (t − 1) / (π² + (ln x + t − ln t)²) dt`.
///
/// Neither piece has a smooth periodic extension, so `spec.rule` is applied
/// as given (adaptive is the default).
pub fn poisson_wright(x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::PoissonWright;
    check_real(rep, x)?;
    let l = x.ln();
    let psi = quadrature::integrate(
        |t| {
            let p = l + t - t.ln();
            c64((t - 1.0) / (PI * PI + p * p), 0.0)
        },
        0.0,
        1.0,
        &half_tol(spec),
    )?;
    let theta = quadrature::integrate(
        |th| {
            let (s, c) = th.sin_cos();
            let half = 0.5 * th;
            let num = half.cos() + th * (1.5 * th).sin() - (1.5 * th).cos() * l;
            let den = 1.0 + 2.0 * th * s + th * th - 2.0 * c * l + l * l;
            guarded(TWO_OVER_PI * num * half.cos(), den)
        },
        0.0,
        PI,
        &half_tol(spec),
    )?;
    let q = quadrature::QuadResult {
        value: psi.value + theta.value,
        err_estimate: psi.err_estimate + theta.err_estimate,
        nodes_used: psi.nodes_used + theta.nodes_used,
        converged: psi.converged && theta.converged,
    };
    finish(rep, &q, c64(q.value.re, 0.0), q.err_estimate)
}

fn half_tol(spec: &QuadratureSpec) -> QuadratureSpec {
    spec.with_tol(0.5 * spec.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::w_principal;
    use crate::quadrature::Rule;
    use std::f64::consts::E;

    fn w(x: f64) -> f64 {
        w_principal(c64(x, 0.0)).unwrap().re
    }

    fn mid() -> QuadratureSpec {
        QuadratureSpec::midpoint(1e-12)
    }

    #[test]
    fn poisson1_examples() {
        assert!(poisson_1(0.0, &mid()).unwrap().value.norm() < 1e-13);
        for x in [1.0, -0.3] {
            assert!((poisson_1(x, &mid()).unwrap().value.re - w(x)).abs() < 1e-11);
        }
        assert!(poisson_1(-0.5, &mid()).unwrap_err().is_domain());
        assert!(poisson_1(E, &mid()).unwrap_err().is_domain());
    }

    #[test]
    fn poisson2_examples() {
        assert!(poisson_2(0.0, &mid()).unwrap().value.norm() < 1e-13);
        assert!((poisson_2(0.5, &mid()).unwrap().value.re - w(0.5)).abs() < 1e-11);
        for x in [-0.2, 0.3, 2.0] {
            let a = poisson_1(x, &mid()).unwrap();
            let b = poisson_2(x, &mid()).unwrap();
            assert!((a.value - b.value).norm() <= a.err_estimate + b.err_estimate + 1e-13);
        }
    }

    #[test]
    fn poisson1_rules_agree_at_half() {
        let i = poisson1_integral(0.5);
        let a = i.integrate(&mid()).unwrap();
        let b = i.integrate(&QuadratureSpec::adaptive(1e-12)).unwrap();
        assert!((a.value - b.value).norm() <= a.err_estimate + b.err_estimate + 1e-13);
    }

    #[test]
    fn poisson_wright_examples() {
        let spec = QuadratureSpec::for_rule(Rule::Adaptive, 1e-12);
        for x in [1.0, E - 0.01, 0.1] {
            let r = poisson_wright(x, &spec).unwrap();
            assert!((r.value.re - w(x)).abs() < 1e-10, "x = {x}");
        }
        assert!(poisson_wright(-0.1, &spec).unwrap_err().is_domain());
    }
}
