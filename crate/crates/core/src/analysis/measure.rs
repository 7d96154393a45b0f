//! The Stieltjes measure `dΦ(u) = (1/π)·Im W(−1/u) du` on `[0, e]` of
//! `W(z)/z = ∫ dΦ(u)/(1 + u·z)`, and its moments.

use std::f64::consts::{E, PI};

use nalgebra::DMatrix;

use crate::oracle::{im_w_on_cut, neg_recip_t};
use crate::quadrature::{self, QuadratureSpec};
use crate::representations::n_of_v;
use crate::{c64, Error, Result, BRANCH_POINT};

/// Largest Hankel order examined; beyond it the determinants are dominated
/// by rounding.
pub const HANKEL_MAX_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    /// `m₀ … m_N`.
    pub moments: Vec<f64>,
    pub n: usize,
    /// Largest quadrature error estimate over all moments.
    pub quad_err: f64,
    /// `det[m_{i+j}]_{i,j<k}` for `k = 1 … min(N/2, 5)`.
    pub hankel: Vec<f64>,
}

impl MomentTable {
    pub fn hankel_positive(&self) -> bool {
        self.hankel.iter().all(|&d| d > 0.0)
    }

    /// `max_n |m_n − (n+1)^{n−1}/n!|`.
    pub fn max_deviation(&self) -> f64 {
        self.moments
            .iter()
            .enumerate()
            .map(|(n, m)| (m - expected_moment(n)).abs())
            .fold(0.0, f64::max)
    }
}

/// `(n+1)^{n−1}/n!`, from matching the geometric expansion of the
/// Stieltjes form with the Maclaurin series of `W(z)/z`.
pub fn expected_moment(n: usize) -> f64 {
    let base = (n + 1) as f64;
    let mut value = base.powi(n as i32 - 1);
    for k in 2..=n {
        value /= k as f64;
    }
    value
}

/// `Im W(−1/t)` for `t ∈ (0, e]`, taking `0` where rounding puts `−1/t`
/// just right of the branch point.
fn density(t: f64) -> f64 {
    let x = -1.0 / t;
    if x >= BRANCH_POINT {
        0.0
    } else {
        im_w_on_cut(x).unwrap_or(0.0)
    }
}

/// `∫₀^u t^n·Im W(−1/t) dt / π`, after `t = e(1 − s²)` removes the square
/// root behavior at `t = e`.
fn weighted_measure(u: f64, n: usize, spec: &QuadratureSpec) -> Result<quadrature::QuadResult> {
    let s_lo = (1.0 - u / E).max(0.0).sqrt();
    if s_lo >= 1.0 {
        return Ok(quadrature::QuadResult {
            value: c64(0.0, 0.0),
            err_estimate: 0.0,
            nodes_used: 0,
            converged: true,
        });
    }
    let scale = 2.0 * E / PI;
    quadrature::integrate(
        |s| {
            let t = E * (1.0 - s * s);
            c64(scale * t.powi(n as i32) * density(t) * s, 0.0)
        },
        s_lo,
        1.0,
        spec,
    )
}

/// `Φ(u) = (1/π)∫₀^u Im W(−1/t) dt` for `u ∈ [0, e]`.
pub fn phi_measure(u: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(0.0..=E).contains(&u) {
        return Err(Error::domain(format!("Φ(u) is defined on [0, e], got {u}")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let q = weighted_measure(u, 0, spec)?.require_converged()?;
    Ok(q.value.re)
}

/// Moments `m_n = ∫₀^e uⁿ dΦ(u)` for `n = 0 … n_max` by quadrature of the
/// cut values of `W`, plus Hankel determinants.
pub fn stieltjes_moments(n_max: usize, spec: &QuadratureSpec) -> Result<MomentTable> {
    let mut moments = Vec::with_capacity(n_max + 1);
    let mut quad_err: f64 = 0.0;
    for n in 0..=n_max {
        let q = weighted_measure(E, n, spec)?.require_converged()?;
        moments.push(q.value.re);
        quad_err = quad_err.max(q.err_estimate);
    }
    let orders = (n_max / 2).min(HANKEL_MAX_ORDER);
    let hankel = hankel_determinants(&moments, orders);
    Ok(MomentTable {
        moments,
        n: n_max,
        quad_err,
        hankel,
    })
}

/// `m_n = (1/π)∫₀^π N(v)·g(v)^{n+1} dv`, the same moments written over the
/// cut parameter; an independent cross-check of [`stieltjes_moments`].
pub fn moment_over_cut_parameter(n: usize, spec: &QuadratureSpec) -> Result<f64> {
    let q = quadrature::integrate(
        |v| c64(n_of_v(v) * neg_recip_t(v).powi(n as i32 + 1) / PI, 0.0),
        0.0,
        PI,
        spec,
    )?
    .require_converged()?;
    Ok(q.value.re)
}

/// `det[m_{i+j}]_{i,j<k}` for `k = 1 … orders` (as far as the moments reach).
pub fn hankel_determinants(moments: &[f64], orders: usize) -> Vec<f64> {
    (1..=orders)
        .take_while(|&k| 2 * k - 1 <= moments.len())
        .map(|k| DMatrix::from_fn(k, k, |i, j| moments[i + j]).determinant())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::adaptive(1e-12)
    }

    #[test]
    fn expected_moments() {
        assert_eq!(expected_moment(0), 1.0);
        assert_eq!(expected_moment(1), 1.0);
        assert_eq!(expected_moment(2), 1.5);
        assert!((expected_moment(10) - 2_357_947_691.0 / 3_628_800.0).abs() < 1e-12);
    }

    #[test]
    fn measure_values() {
        assert_eq!(phi_measure(0.0, &spec()).unwrap(), 0.0);
        let total = phi_measure(E, &spec()).unwrap();
        assert!((total - 1.0).abs() < 1e-10);
        let (a, b) = (phi_measure(1.0, &spec()).unwrap(), phi_measure(2.0, &spec()).unwrap());
        assert!(0.0 < a && a < b && b < total);
        assert!(phi_measure(3.0, &spec()).unwrap_err().is_domain());
        assert!(phi_measure(-0.1, &spec()).unwrap_err().is_domain());
    }

    #[test]
    fn low_moments() {
        let t = stieltjes_moments(4, &spec()).unwrap();
        for (n, m) in t.moments.iter().enumerate() {
            assert!((m - expected_moment(n)).abs() < 1e-9, "m_{n} = {m}");
        }
        assert_eq!(t.hankel.len(), 2);
        assert!(t.hankel_positive());
        assert!((t.hankel[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn cut_parameter_form_agrees() {
        for n in [0, 3, 7] {
            let m = moment_over_cut_parameter(n, &QuadratureSpec::midpoint(1e-11)).unwrap();
            assert!((m - expected_moment(n)).abs() < 1e-9, "n = {n}");
        }
    }
}
