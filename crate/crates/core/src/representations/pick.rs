//! Pick (Nevanlinna) forms and the Cauer-type form in `z²`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{finish, n_of_v, sinc, EvalResult, Integral, RepresentationId};
use crate::oracle::{self, neg_recip_t};
use crate::quadrature::QuadratureSpec;
use crate::{c64, Result};

const INV_PI: f64 = 1.0 / PI;

/// Constants fixing the real parts of the Pick representations, derived
/// from `W(i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PickConstants {
    /// `Re W(i)`.
    pub alpha0: f64,
    /// `Im W(i) = Re[W(i)/i]`.
    pub beta0: f64,
    /// `e^{-α₀} = Re[W(i)/i]/cos β₀`.
    pub gamma0: f64,
    /// `Re[i/W(i)]`.
    pub eta0: f64,
}

impl PickConstants {
    pub fn get() -> &'static PickConstants {
        static CONSTANTS: OnceLock<PickConstants> = OnceLock::new();
        CONSTANTS.get_or_init(|| {
            let i = c64(0.0, 1.0);
            let w = oracle::w_principal(i).expect("W(i) is well inside the cut plane");
            PickConstants {
                alpha0: w.re,
                beta0: w.im,
                gamma0: (-w.re).exp(),
                eta0: (i / w).re,
            }
        })
    }
}

/// `K(z, v)`, the Pick kernel with `t(v)` replaced by `g = -1/t`:
/// `N(v)·(g − z)·g² / ((1 + z·g)(1 + g²))`.
pub fn pick_kernel(z: Complex64, v: f64) -> Complex64 {
    let g = neg_recip_t(v);
    n_of_v(v) * (g - z) * (g * g) / ((1.0 + z * g) * (1.0 + g * g))
}

/// `(1/π)∫ K(z,v)·t(v) dv`.
pub(super) fn pick1_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| {
        let g = neg_recip_t(v);
        -n_of_v(v) * (g - z) * g * INV_PI / ((1.0 + z * g) * (1.0 + g * g))
    })
}

/// `(1/π)∫ K(z,v) dv`.
pub(super) fn pick3_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| pick_kernel(z, v) * INV_PI)
}

/// `(1/π)∫ K(z,v)·e^{-2v·cot v} dv`; note `g²·e^{-2v·cot v} = (sin v/v)²`.
pub(super) fn pick4_integral(z: Complex64) -> Integral {
    Integral::new(0.0, PI, move |v| {
        let g = neg_recip_t(v);
        let s = sinc(v);
        n_of_v(v) * (s * s) * (g - z) * INV_PI / ((1.0 + z * g) * (1.0 + g * g))
    })
}

/// `(2/π)∫₀^{π/2} M(v)·(sin v/v)·e^{-v·tan v} / (z²·h² + 1) dv` with
/// `M = v² + (1 + v·tan v)²` and `h = 1/s(v) = cos v·e^{-v·tan v}/v`.
pub(super) fn cauer_integral(z: Complex64) -> Integral {
    let z2 = z * z;
    Integral::new(0.0, FRAC_PI_2, move |v| {
        let vt = v * v.tan();
        let decay = (-vt).exp();
        let m = v * v + (1.0 + vt) * (1.0 + vt);
        let h = v.cos() * decay / v;
        2.0 * INV_PI * m * sinc(v) * decay / (z2 * (h * h) + 1.0)
    })
}

/// `W(z) = α₀ + (1/π)∫₀^π K(z,v)·t(v) dv`.
pub fn pick_w(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::PickW;
    rep.domain().check(z)?;
    let q = pick1_integral(z).integrate(spec)?;
    finish(rep, &q, PickConstants::get().alpha0 + q.value, q.err_estimate)
}

/// `W(z)/z = γ₀·exp{-(1/π)∫₀^π K(z,v)·t(v) dv}`.
pub fn pick_exp_form(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::PickExpForm;
    rep.domain().check(z)?;
    let q = pick1_integral(z).integrate(spec)?;
    let value = PickConstants::get().gamma0 * (-q.value).exp();
    finish(rep, &q, value, value.norm() * q.err_estimate)
}

/// `W(z)/z = β₀ + (1/π)∫₀^π K(z,v) dv`.
pub fn pick_w_over_z(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::PickWOverZ;
    rep.domain().check(z)?;
    let q = pick3_integral(z).integrate(spec)?;
    finish(rep, &q, PickConstants::get().beta0 + q.value, q.err_estimate)
}

/// `z/W(z) = η₀ − (1/π)∫₀^π K(z,v)·e^{-2v·cot v} dv`.
pub fn pick_z_over_w(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::PickZOverW;
    rep.domain().check(z)?;
    let q = pick4_integral(z).integrate(spec)?;
    finish(rep, &q, PickConstants::get().eta0 - q.value, q.err_estimate)
}

/// `W(z)/z` for `Re z > 0` from the Pick representation of `W(√ζ)/√ζ`.
pub fn cauer_w_over_z(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let rep = RepresentationId::CauerZ2;
    rep.domain().check(z)?;
    let q = cauer_integral(z).integrate(spec)?;
    finish(rep, &q, q.value, q.err_estimate)
}
