//! Stieltjes-type forms over `v ∈ (0, π)` and the Thorin logarithmic form.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{finish, n_of_v, sinc, EvalResult, Integral, RepresentationId};
use crate::oracle::neg_recip_t;
use crate::quadrature::QuadratureSpec;
use crate::{c64, Error, Result};

const INV_PI: f64 = 1.0 / PI;

pub(super) fn stieltjes_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| {
        let g = neg_recip_t(v);
        n_of_v(v) * g * INV_PI / (1.0 + z * g)
    })
}

pub(super) fn w_prime_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| {
        let g = neg_recip_t(v);
        g * INV_PI / (1.0 + z * g)
    })
}

pub(super) fn inv_one_plus_w_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| INV_PI / (1.0 + z * neg_recip_t(v)))
}

/// The integral term of `1/W = 1/z + I(z)`.
pub(super) fn inv_w_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| {
        let s = sinc(v);
        n_of_v(v) * s * s * INV_PI / (1.0 + z * neg_recip_t(v))
    })
}

pub(super) fn thorin_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| {
        let arg = 1.0 + z * neg_recip_t(v);
        if arg.im == 0.0 && arg.re <= 0.0 {
            // Off the cut this cannot happen; flag it rather than pick a branch.
            return c64(f64::NAN, f64::NAN);
        }
        arg.ln() * INV_PI
    })
}

/// `W(z)/z = (1/π)∫₀^π N(v) / (z + v·csc v·e^{-v·cot v}) dv`.
pub fn stieltjes_w_over_z(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::StieltjesWOverZ;
    rep.domain().check(z)?;
    let q = stieltjes_integral(z).integrate(spec)?;
    finish(rep, &q, q.value, q.err_estimate)
}

/// `W'(z) = (1/π)∫₀^π dv / (z + v·csc v·e^{-v·cot v})`.
pub fn w_prime(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::WPrime;
    rep.domain().check(z)?;
    let q = w_prime_integral(z).integrate(spec)?;
    finish(rep, &q, q.value, q.err_estimate)
}

pub fn inv_one_plus_w(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::InvOnePlusW;
    rep.domain().check(z)?;
    let q = inv_one_plus_w_integral(z).integrate(spec)?;
    finish(rep, &q, q.value, q.err_estimate)
}

pub fn inv_w(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::InvW;
    rep.domain().check(z)?;
    let q = inv_w_integral(z).integrate(spec)?;
    finish(rep, &q, z.inv() + q.value, q.err_estimate)
}

/// `W(z) = ln(z/W(z)) = ln(1 + z·I(z))` with `I` the integral term of `1/W`.
pub fn w_log_form(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::WLogForm;
    rep.domain().check(z)?;
    let q = inv_w_integral(z).integrate(spec)?;
    let arg = 1.0 + z * q.value;
    let err = z.norm() * q.err_estimate / arg.norm();
    finish(rep, &q, arg.ln(), err)
}

/// `W(z) = (1/π)∫₀^π ln(1 + z·(sin v / v)·e^{v·cot v}) dv`.
pub fn thorin_w(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::ThorinW;
    rep.domain().check(z)?;
    let q = thorin_integral(z).integrate(spec).map_err(|e| match e {
        Error::NonFinite { x } => Error::domain(format!(
            "logarithm argument reached the negative axis at v = {x}"
        )),
        other => other,
    })?;
    finish(rep, &q, q.value, q.err_estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{w_derivative_oracle, w_principal};
    use std::f64::consts::E;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::midpoint(1e-12)
    }

    fn gspec() -> QuadratureSpec {
        QuadratureSpec::gauss(1e-12)
    }

    fn w(z: Complex64) -> Complex64 {
        w_principal(z).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn stieltjes_examples() {
        let r = stieltjes_w_over_z(c64(1e-8, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(1.0, 0.0), 1e-6));
        let r = stieltjes_w_over_z(c64(E, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(1.0 / E, 0.0), 1e-11));
        let r = stieltjes_w_over_z(c64(1.0, 0.0), &spec()).unwrap();
        assert!(close(r.value, w(c64(1.0, 0.0)), 1e-11));
        let z = c64(1.0, 2.0);
        let r = stieltjes_w_over_z(z, &spec()).unwrap();
        assert!(close(r.value, w(z) / z, 1e-11));
        assert_eq!(r.target, super::super::Target::WOverZ);
    }

    #[test]
    fn w_prime_examples() {
        let r = w_prime(c64(1e-8, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(1.0, 0.0), 1e-6));
        let r = w_prime(c64(E, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(0.5 / E, 0.0), 1e-11));
        let z = c64(0.0, 1.0);
        let r = w_prime(z, &spec()).unwrap();
        assert!(close(r.value, w_derivative_oracle(z).unwrap(), 1e-11));
    }

    #[test]
    fn inv_one_plus_w_examples() {
        let r = inv_one_plus_w(c64(1e-8, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(1.0, 0.0), 1e-7));
        let r = inv_one_plus_w(c64(E, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(0.5, 0.0), 1e-11));
        let z = c64(2.0, 0.0);
        let r = inv_one_plus_w(z, &spec()).unwrap();
        assert!(close(r.value, (1.0 + w(z)).inv(), 1e-11));
    }

    #[test]
    fn inv_w_examples() {
        let r = inv_w(c64(E, 0.0), &gspec()).unwrap();
        assert!(close(r.value, c64(1.0, 0.0), 1e-11));
        for z in [c64(1.0, 0.0), c64(-0.2, 0.0)] {
            let r = inv_w(z, &gspec()).unwrap();
            assert!(close(r.value, w(z).inv(), 1e-10), "{z}");
        }
        assert!(inv_w(c64(0.0, 0.0), &gspec()).unwrap_err().is_domain());
    }

    #[test]
    fn w_log_examples() {
        let r = w_log_form(c64(E, 0.0), &gspec()).unwrap();
        assert!(close(r.value, c64(1.0, 0.0), 1e-11));
        for z in [c64(1.0, 0.0), c64(0.1, 0.1)] {
            let r = w_log_form(z, &gspec()).unwrap();
            assert!(close(r.value, w(z), 1e-11), "{z}");
        }
    }

    #[test]
    fn thorin_examples() {
        let r = thorin_w(c64(0.0, 0.0), &spec()).unwrap();
        assert_eq!(r.value, c64(0.0, 0.0));
        let r = thorin_w(c64(E, 0.0), &spec()).unwrap();
        assert!(close(r.value, c64(1.0, 0.0), 1e-11));
        let z = c64(-0.3, 0.0);
        let r = thorin_w(z, &spec()).unwrap();
        assert!(close(r.value, w(z), 1e-11));
        assert!(thorin_w(c64(-1.0, 0.0), &spec()).unwrap_err().is_domain());
    }

    #[test]
    fn thorin_derivative_matches_w_prime() {
        let h = 1e-5;
        for x in [0.5, 1.0, 2.0, E] {
            let plus = thorin_w(c64(x + h, 0.0), &spec()).unwrap().value;
            let minus = thorin_w(c64(x - h, 0.0), &spec()).unwrap().value;
            let fd = (plus - minus) / (2.0 * h);
            let wp = w_prime(c64(x, 0.0), &spec()).unwrap().value;
            assert!(close(fd, wp, 1e-5), "x = {x}");
        }
    }
}
