//! The Stieltjes functions `F₀`, `F₁` built from differences of `W`, and a
//! grid test for the anti-Herglotz property `Im f ≤ 0` on `Im z > 0`.

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use crate::oracle::w_principal;
use crate::{c64, Error, Result};

/// Radius of the circle used to evaluate the regular part near `z = 0`.
const CAUCHY_RADIUS: f64 = 0.1;
const CAUCHY_NODES: usize = 64;
/// Below this `|z|` the regular part comes from a Cauchy integral.
const NEAR_ORIGIN: f64 = 0.05;

/// Default slack of [`anti_herglotz_grid_check`].
pub const ANTI_HERGLOTZ_SLACK: f64 = 1e-12;

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a <= E {
        Ok(())
    } else {
        Err(Error::domain(format!("a must lie in (0, e], got {a}")))
    }
}

/// `e^z − 1` without cancellation near `0`.
fn expm1(z: Complex64) -> Complex64 {
    let s = (0.5 * z.im).sin();
    c64(
        z.re.exp_m1() * z.im.cos() - 2.0 * s * s,
        z.re.exp() * z.im.sin(),
    )
}

/// `D = W(a(1+u)) − W(a)`, refined by Newton on
/// `expm1(D) + (D/w₁)·e^D = u` so that it keeps full relative accuracy as
/// `u → 0`. Large increments need no refinement.
fn w_increment(u: Complex64, a: f64, w1: f64) -> Result<Complex64> {
    let mut d = w_principal(a * (1.0 + u))? - w1;
    if d.norm() > 0.5 {
        return Ok(d);
    }
    for _ in 0..8 {
        let ed = d.exp();
        let f = expm1(d) + d / w1 * ed - u;
        let df = ed * (1.0 + (1.0 + d) / w1);
        let step = f / df;
        d -= step;
        if step.norm() <= 4.0 * f64::EPSILON * d.norm() {
            break;
        }
    }
    Ok(d)
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite { x: z.re })
    }
}

/// `c = (1 + W(a))²/W(a)`, the residue of both functions at `z = 0`.
pub fn sokal_pole_residue(a: f64) -> Result<f64> {
    check_a(a)?;
    let w = w_principal(c64(a, 0.0))?.re;
    Ok((1.0 + w) * (1.0 + w) / w)
}

/// `F₀(z) = z/(1+z)·W(a(1+z)) / [W(a(1+z)) − W(a)]²`, off
/// `(−∞, −1 − 1/(ae)]`, with a simple pole at `0`.
pub fn sokal_f0(z: Complex64, a: f64) -> Result<Complex64> {
    check_a(a)?;
    if z.im == 0.0 && z.re <= -1.0 - 1.0 / (a * E) {
        return Err(Error::domain(format!("z = {z} lies on the cut of F₀")));
    }
    if z.norm() == 0.0 {
        return Err(Error::Pole);
    }
    let w1 = w_principal(c64(a, 0.0))?.re;
    if z == c64(-1.0, 0.0) {
        return Ok(c64(-a / (w1 * w1), 0.0));
    }
    let d = w_increment(z, a, w1)?;
    finite(z.fdiv(1.0 + z) * (w1 + d) / (d * d))
}

/// `F₁(z) = z·W(a/(1+z)) / [W(a) − W(a/(1+z))]²`, off `[−1 − ae, −1]`, with
/// a simple pole at `0`. Equals `−F₀(−z/(1+z))`.
pub fn sokal_f1(z: Complex64, a: f64) -> Result<Complex64> {
    check_a(a)?;
    if z.im == 0.0 && z.re <= -1.0 && z.re >= -1.0 - a * E {
        return Err(Error::domain(format!("z = {z} lies on the cut of F₁")));
    }
    if z.norm() == 0.0 {
        return Err(Error::Pole);
    }
    let w1 = w_principal(c64(a, 0.0))?.re;
    // a/(1+z) = a(1+u) with u = −z/(1+z).
    let u = -z.fdiv(1.0 + z);
    let d = w_increment(u, a, w1)?;
    finite(z * (w1 + d) / (d * d))
}

/// `f(z) − c/z`, with the regular part taken from a Cauchy integral over
/// `|ζ| = 0.1` when `|z|` is small, so the pole never cancels numerically.
fn regular_part(f: impl Fn(Complex64) -> Result<Complex64>, c: f64, z: Complex64) -> Result<Complex64> {
    let reg = |s: Complex64| f(s).map(|v| v - c / s);
    if z.norm() >= NEAR_ORIGIN {
        reg(z)
    } else {
        cauchy(reg, z)
    }
}

fn cauchy(reg: impl Fn(Complex64) -> Result<Complex64>, z: Complex64) -> Result<Complex64> {
    let mut sum = c64(0.0, 0.0);
    for k in 0..CAUCHY_NODES {
        let th = 2.0 * PI * (k as f64 + 0.5) / CAUCHY_NODES as f64;
        let s = Complex64::from_polar(CAUCHY_RADIUS, th);
        sum += reg(s)? * s / (s - z);
    }
    Ok(sum / CAUCHY_NODES as f64)
}

/// `F₀(z) − c/z`, analytic at `0`.
pub fn sokal_f0_regular(z: Complex64, a: f64) -> Result<Complex64> {
    let c = sokal_pole_residue(a)?;
    regular_part(|s| sokal_f0(s, a), c, z)
}

/// `F₁(z) − c/z`, analytic at `0`.
pub fn sokal_f1_regular(z: Complex64, a: f64) -> Result<Complex64> {
    let c = sokal_pole_residue(a)?;
    regular_part(|s| sokal_f1(s, a), c, z)
}

/// Functions submitted to the anti-Herglotz test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HerglotzCandidate {
    /// `W(z)/z` through the oracle.
    WOverZ,
    /// `W(z)`, which fails (`Im W > 0` there).
    W,
    F0 { a: f64 },
    F1 { a: f64 },
    F0Regular { a: f64 },
    F1Regular { a: f64 },
}

impl HerglotzCandidate {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match *self {
            HerglotzCandidate::WOverZ => Ok(w_principal(z)? / z),
            HerglotzCandidate::W => w_principal(z),
            HerglotzCandidate::F0 { a } => sokal_f0(z, a),
            HerglotzCandidate::F1 { a } => sokal_f1(z, a),
            HerglotzCandidate::F0Regular { a } => sokal_f0_regular(z, a),
            HerglotzCandidate::F1Regular { a } => sokal_f1_regular(z, a),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            HerglotzCandidate::WOverZ => "W(z)/z".into(),
            HerglotzCandidate::W => "W(z)".into(),
            HerglotzCandidate::F0 { a } => format!("F0(a={a})"),
            HerglotzCandidate::F1 { a } => format!("F1(a={a})"),
            HerglotzCandidate::F0Regular { a } => format!("F0-c/z(a={a})"),
            HerglotzCandidate::F1Regular { a } => format!("F1-c/z(a={a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntiHerglotzReport {
    pub name: String,
    pub points: usize,
    /// Largest `Im f` over the grid.
    pub max_im: f64,
    pub argmax: Complex64,
    pub slack: f64,
    pub pass: bool,
}

/// `n_r × n_θ` points `r·e^{iθ}` with `r` log-spaced in `[r_min, r_max]`
/// and `θ` at the midpoints of `n_θ` equal slices of `(0, π)`.
pub fn upper_half_plane_grid(n_r: usize, n_theta: usize, r_min: f64, r_max: f64) -> Vec<Complex64> {
    let mut grid = Vec::with_capacity(n_r * n_theta);
    for i in 0..n_r {
        let t = if n_r == 1 { 0.0 } else { i as f64 / (n_r - 1) as f64 };
        let r = r_min * (r_max / r_min).powf(t);
        for j in 0..n_theta {
            let th = PI * (j as f64 + 0.5) / n_theta as f64;
            grid.push(Complex64::from_polar(r, th));
        }
    }
    grid
}

/// The standard 200-point grid: 20 radii in `[10⁻², 10²]`, 10 angles.
pub fn default_upper_half_plane_grid() -> Vec<Complex64> {
    upper_half_plane_grid(20, 10, 1e-2, 1e2)
}

/// Passes iff `Im f(z) ≤ slack` at every grid point (all with `Im z > 0`).
pub fn anti_herglotz_grid_check(
    f: &HerglotzCandidate,
    grid: &[Complex64],
    slack: f64,
) -> Result<AntiHerglotzReport> {
    let mut max_im = f64::NEG_INFINITY;
    let mut argmax = c64(0.0, 0.0);
    for &z in grid {
        if !(z.im > 0.0) {
            return Err(Error::domain(format!("grid point {z} is not in the upper half-plane")));
        }
        let v = f.eval(z)?;
        if v.im > max_im {
            max_im = v.im;
            argmax = z;
        }
    }
    Ok(AntiHerglotzReport {
        name: f.name(),
        points: grid.len(),
        max_im,
        argmax,
        slack,
        pass: max_im <= slack,
    })
}
