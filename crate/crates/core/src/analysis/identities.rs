//! Closed-form definite integrals that follow from the representations.

use std::f64::consts::{E, FRAC_PI_2, PI};

use crate::oracle::neg_recip_t;
use crate::quadrature::{self, QuadratureSpec, Rule};
use crate::representations::{n_of_v, varphi};
use crate::{c64, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResult {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub err_estimate: f64,
}

impl IdentityResult {
    pub fn abs_error(&self) -> f64 {
        (self.computed - self.expected).abs()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.expected.abs()
    }
}

fn integrate_real(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let q = quadrature::integrate(|v| c64(f(v), 0.0), a, b, spec)?.require_converged()?;
    Ok((q.value.re, q.err_estimate))
}

/// `∫₀^π [sin v/v · e^{v·cot v}]^ν dv` against `π·ν^ν/ν!`. The tolerance
/// of `spec` is taken relative to the expected value.
pub fn nuttall_identity(nu: u32, spec: &QuadratureSpec) -> Result<IdentityResult> {
    if !(1..=12).contains(&nu) {
        return Err(Error::domain(format!("ν must be in 1..=12, got {nu}")));
    }
    let mut expected = PI * f64::from(nu).powi(nu as i32);
    for k in 2..=nu {
        expected /= f64::from(k);
    }
    let mut s = *spec;
    s.tol = spec.tol * expected;
    let (computed, err) = integrate_real(|v| neg_recip_t(v).powi(nu as i32), 0.0, PI, &s)?;
    Ok(IdentityResult {
        name: format!("nuttall(nu={nu})"),
        computed,
        expected,
        err_estimate: err,
    })
}

/// The four integrals obtained by evaluating the Stieltjes forms of `W/z`,
/// `1/W`, `1/(1+W)` and the form in `z²` at `z = e`, where `W(e) = 1`.
/// Integrands are evaluated through `g(v) = sin v/v·e^{v·cot v}`, which is
/// the reciprocal of `v·csc v·e^{−v·cot v}`.
///
/// The second integrand does not vanish at `π`, so a midpoint `spec` is
/// replaced by Gauss–Legendre at the same tolerance for that one.
pub fn closing_identities(spec: &QuadratureSpec) -> Result<Vec<IdentityResult>> {
    let second = if spec.rule == Rule::MidpointPeriodic {
        QuadratureSpec::for_rule(Rule::GaussLegendre, spec.tol)
    } else {
        *spec
    };
    let mut out = Vec::with_capacity(4);
    let mut push = |name: &str, computed: (f64, f64), expected: f64| {
        out.push(IdentityResult {
            name: name.to_string(),
            computed: computed.0,
            expected,
            err_estimate: computed.1,
        });
    };
    // N/(1 + v·csc v·e^{−(1 + v·cot v)}) = N·e·g/(1 + e·g)
    let one = integrate_real(
        |v| {
            let g = neg_recip_t(v);
            n_of_v(v) * E * g / (1.0 + E * g)
        },
        0.0,
        PI,
        spec,
    )?;
    push("closing-1", one, PI);
    // N/(v·csc v·(v·csc v + e^{1 + v·cot v})) = N·sinc²/(1 + e·g)
    let two = integrate_real(
        |v| {
            let g = neg_recip_t(v);
            let s = v.sin() / v;
            n_of_v(v) * s * s / (1.0 + E * g)
        },
        0.0,
        PI,
        &second,
    )?;
    push("closing-2", two, (E - 1.0) * PI / E);
    // 1/(1 + e^{1 + v·cot v}·sin v/v) = 1/(1 + e·g)
    let three = integrate_real(|v| 1.0 / (1.0 + E * neg_recip_t(v)), 0.0, PI, spec)?;
    push("closing-3", three, FRAC_PI_2);
    // M·v·sec v·e^{v·tan v − 1}·tan v/(1 + v²sec²v·e^{2(v·tan v − 1)})
    // = e·M·(sin v/v)·e^{−v·tan v}/(e²h² + 1), h = cos v·e^{−v·tan v}/v.
    let four = integrate_real(
        |v| {
            let vt = v * v.tan();
            let decay = (-vt).exp();
            let m = v * v + (1.0 + vt) * (1.0 + vt);
            let h = v.cos() * decay / v;
            let s = if v == 0.0 { 1.0 } else { v.sin() / v };
            E * m * s * decay / (E * E * h * h + 1.0)
        },
        0.0,
        FRAC_PI_2,
        spec,
    )?;
    push("closing-4", four, FRAC_PI_2);
    Ok(out)
}

/// `dν/dξ = φ(ξ)/ξ`, the Lévy density of `W` as a Bernstein function.
pub fn bernstein_levy_density(xi: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::domain(format!("the Lévy density needs ξ > 0, got {xi}")));
    }
    Ok(varphi(xi, spec)? / xi)
}
