//! Reference evaluation of the Lambert W function.
//!
//! [`w_principal`] evaluates `W₀` on the cut plane `ℂ \ (-∞, -1/e)` by Halley
//! iteration on `w·eʷ − z`. [`w_branch_m1`] evaluates `W₋₁` on `[-1/e, 0)`.
//! The remaining functions describe the boundary values of `W₀` on its cut:
//! a point `t < -1/e` corresponds to `v = Im W(t + i0) ∈ (0, π)` through
//! `t = -v·csc v·e^{-v·cot v}` and `Re W = -v·cot v`.

use std::f64::consts::{E, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::{c64, Error, Result, BRANCH_POINT};

/// Relative residual `|w·eʷ − z| / |z|` accepted by the Halley iteration.
pub const RESIDUAL_TOL: f64 = 1e-14;
pub const MAX_ITERATIONS: usize = 50;

// e = E_HI + E_LO to about 32 digits; used to form e·z + 1 without cancellation.
const E_HI: f64 = E;
const E_LO: f64 = 1.445_646_891_729_250_2e-16;

// W₀ = Σ μ_k p^k near the branch point, p = sqrt(2(e·z + 1)).
const BRANCH_SERIES: [f64; 10] = [
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680_863.0 / 43_545_600.0,
    -1963.0 / 204_120.0,
    226_287_557.0 / 37_623_398_400.0,
];

/// Below this |p| the branch-point series is returned without iterating.
const BRANCH_SERIES_DIRECT: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalleyOptions {
    pub rel_tol: f64,
    pub max_iterations: usize,
}

impl Default for HalleyOptions {
    fn default() -> Self {
        HalleyOptions {
            rel_tol: RESIDUAL_TOL,
            max_iterations: MAX_ITERATIONS,
        }
    }
}

/// Principal branch `W₀(z)`.
///
/// Real `z < -1/e` lies on the branch cut and is rejected; use
/// [`im_w_on_cut`] for boundary values there. `z = -1/e` returns `-1`.
pub fn w_principal(z: Complex64) -> Result<Complex64> {
    w_principal_with(z, &HalleyOptions::default())
}

pub fn w_principal_with(z: Complex64, opts: &HalleyOptions) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("non-finite argument {z}")));
    }
    if z.im < 0.0 {
        // Evaluating the upper half-plane only makes conjugate symmetry exact.
        return w_principal_with(z.conj(), opts).map(|w| w.conj());
    }
    let real = z.im == 0.0;
    if real && z.re < BRANCH_POINT {
        return Err(Error::domain(format!(
            "z = {} lies on the branch cut (-∞, -1/e)",
            z.re
        )));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(c64(0.0, 0.0));
    }

    let mut d = branch_offset(z);
    if real {
        // f64(-1/e) sits a hair below the true branch point.
        d.re = d.re.max(0.0);
    }
    let p = (2.0 * d).sqrt();
    if p.norm() < BRANCH_SERIES_DIRECT {
        let w = branch_series(p);
        return Ok(if real { c64(w.re, 0.0) } else { w });
    }

    let accept = |w: Complex64| -> Option<Complex64> {
        if real {
            if w.im.abs() <= 1e-8 * (1.0 + w.re.abs()) && w.re >= -1.0 - 1e-12 {
                return Some(c64(w.re, 0.0));
            }
            return None;
        }
        (w.im >= 0.0 && in_principal_range(w)).then_some(w)
    };

    let mut last_err = None;
    for guess in initial_guesses(z, p) {
        match halley(z, guess, opts) {
            Ok(w) => {
                if let Some(w) = accept(w) {
                    return Ok(w);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::Convergence {
        iterations: opts.max_iterations,
        residual: f64::NAN,
    }))
}

/// `e·z + 1` with the constant split so that the result keeps full relative
/// accuracy near the branch point.
fn branch_offset(z: Complex64) -> Complex64 {
    c64(E_HI.mul_add(z.re, 1.0) + E_LO * z.re, E * z.im)
}

fn branch_series(p: Complex64) -> Complex64 {
    BRANCH_SERIES
        .iter()
        .rev()
        .fold(c64(0.0, 0.0), |acc, &c| acc * p + c)
}

/// Image of the principal branch: `|Im w| < π` and `Re w > -Im w·cot(Im w)`.
fn in_principal_range(w: Complex64) -> bool {
    let v = w.im.abs();
    if v >= PI {
        return false;
    }
    let boundary = -v_cot_v(v);
    w.re > boundary - 1e-10 * (1.0 + boundary.abs())
}

/// Starting points, most appropriate first. Later entries only matter if an
/// earlier one converges off the principal branch.
fn initial_guesses(z: Complex64, p: Complex64) -> Vec<Complex64> {
    let r = z.norm();
    let taylor = || taylor_series(z, 6);
    let branch = || branch_series(p);
    let winitzki = || {
        let l = (1.0 + z).ln();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    };
    let asymptotic = || {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    let mut out = Vec::with_capacity(4);
    if r < 0.5 * crate::INV_E {
        out.push(taylor());
    } else if (z - BRANCH_POINT).norm() < 0.3 {
        out.push(branch());
    } else if r >= 3.0 {
        out.push(asymptotic());
    }
    out.push(winitzki());
    out.push(branch());
    if r > 1.0 {
        out.push(asymptotic());
    }
    out.retain(|w| w.re.is_finite() && w.im.is_finite());
    out
}

fn halley(z: Complex64, mut w: Complex64, opts: &HalleyOptions) -> Result<Complex64> {
    // Iterate on g = w − z·e^{−w} = e^{−w}·(w·eʷ − z): same roots, and the
    // step never forms quantities of size |z|², which would overflow.
    let ln_scale = z.norm().ln();
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iterations {
        let g = w - z * (-w).exp();
        residual = g.norm() * (w.re - ln_scale).exp();
        // Rounding in w·eʷ grows with |w|; this only matters for huge |z|.
        let floor = 4.0 * f64::EPSILON * (1.0 + w.norm());
        if residual <= opts.rel_tol.max(floor) {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let step = g / (wp1 - (w + 2.0) * g / (2.0 * wp1));
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        w -= step;
    }
    Err(Error::Convergence {
        iterations: opts.max_iterations,
        residual,
    })
}

/// Branch `W₋₁(x)` for `x ∈ [-1/e, 0)`; the result is `≤ -1`.
pub fn w_branch_m1(x: f64) -> Result<f64> {
    if !(BRANCH_POINT..0.0).contains(&x) {
        return Err(Error::domain(format!(
            "W₋₁ is real only on [-1/e, 0), got {x}"
        )));
    }
    let d = branch_offset(c64(x, 0.0)).re.max(0.0);
    let p = (2.0 * d).sqrt();
    if p < BRANCH_SERIES_DIRECT {
        return Ok(branch_series(c64(-p, 0.0)).re);
    }
    let mut w = if p < 1.0 {
        branch_series(c64(-p, 0.0)).re
    } else {
        let l1 = (-x).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    }
    .min(-1.0 - 1e-3 * p);

    let scale = x.abs();
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        residual = f.abs() / scale;
        let floor = 4.0 * f64::EPSILON * (1.0 + w.abs());
        if residual <= RESIDUAL_TOL.max(floor) {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let next = w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        // Stay on the lower branch: never step to the right of -1.
        w = if next.is_finite() && next < -1.0 {
            next
        } else {
            0.5 * (w - 1.0)
        };
    }
    Err(Error::Convergence {
        iterations: MAX_ITERATIONS,
        residual,
    })
}

/// Partial sum `Σ_{n=1}^{terms} (-n)^{n-1} zⁿ / n!` of the Maclaurin series.
pub fn taylor_series(z: Complex64, terms: usize) -> Complex64 {
    let mut sum = c64(0.0, 0.0);
    let mut zn = c64(1.0, 0.0);
    for n in 1..=terms {
        zn *= z;
        let nf = n as f64;
        // (-n)^{n-1}/n! evaluated in log space to stay finite for large n.
        let mag = ((nf - 1.0) * nf.ln() - ln_factorial(n)).exp();
        let coeff = if n % 2 == 1 { mag } else { -mag };
        sum += zn * coeff;
    }
    sum
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `v·cot v`, with its even series near `v = 0`.
pub(crate) fn v_cot_v(v: f64) -> f64 {
    if v.abs() < 1e-3 {
        let v2 = v * v;
        1.0 - v2 / 3.0 - v2 * v2 / 45.0
    } else {
        v * v.cos() / v.sin()
    }
}

/// `v·csc v`, with its even series near `v = 0`.
pub(crate) fn v_csc_v(v: f64) -> f64 {
    if v.abs() < 1e-3 {
        let v2 = v * v;
        1.0 + v2 / 6.0 + 7.0 * v2 * v2 / 360.0
    } else {
        v / v.sin()
    }
}

fn check_cut_parameter(v: f64) -> Result<()> {
    if (0.0..PI).contains(&v) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "cut parameter v = {v} outside [0, π)"
        )))
    }
}

/// `u(v) = -v·cot v = Re W` on the upper edge of the cut.
pub fn u_of_v(v: f64) -> Result<f64> {
    check_cut_parameter(v)?;
    Ok(-v_cot_v(v))
}

/// `t(v) = -v·csc v·e^{-v·cot v}`, the cut point whose upper boundary value
/// has imaginary part `v`.
pub fn t_of_v(v: f64) -> Result<f64> {
    check_cut_parameter(v)?;
    let t = -v_csc_v(v) * (-v_cot_v(v)).exp();
    if t.is_finite() {
        Ok(t)
    } else {
        Err(Error::domain(format!("t(v) overflows at v = {v}")))
    }
}

/// `-1/t(v) = (sin v / v)·e^{v·cot v}`, which decreases from `e` at `v = 0`
/// to `0` at `v = π` and underflows gracefully instead of overflowing.
pub fn neg_recip_t(v: f64) -> f64 {
    (-v_cot_v(v)).exp().recip() / v_csc_v(v)
}

/// `s(v) = v·sec v·e^{v·tan v}` with `W(i·s) = v·tan v + i·v`.
pub fn s_of_v(v: f64) -> Result<f64> {
    if !(0.0..FRAC_PI_2).contains(&v) {
        return Err(Error::domain(format!("s(v) needs v in [0, π/2), got {v}")));
    }
    let s = v / v.cos() * (v * v.tan()).exp();
    if s.is_finite() {
        Ok(s)
    } else {
        Err(Error::domain(format!("s(v) overflows at v = {v}")))
    }
}

/// `Im W(t + i0)` for `t ≤ -1/e`, found by bisection on the monotone `t(v)`.
pub fn im_w_on_cut(t: f64) -> Result<f64> {
    if !t.is_finite() || t > BRANCH_POINT {
        return Err(Error::domain(format!(
            "t = {t} is not on the branch cut (-∞, -1/e]"
        )));
    }
    if t == BRANCH_POINT {
        return Ok(0.0);
    }
    // ln(-t(v)) = ln(v·csc v) - v·cot v increases on (0, π): no overflow.
    let target = (-t).ln();
    let ln_neg_t = |v: f64| v_csc_v(v).ln() - v_cot_v(v);
    let (mut lo, mut hi) = (0.0_f64, PI);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if ln_neg_t(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `W'(z) = W(z) / (z·(1 + W(z)))`, with the limit `W'(0) = 1`.
pub fn w_derivative_oracle(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(c64(1.0, 0.0));
    }
    let w = w_principal(z)?;
    let wp1 = w + 1.0;
    if wp1.norm() == 0.0 {
        return Err(Error::domain("W' is singular at the branch point z = -1/e"));
    }
    Ok(w / (z * wp1))
}
