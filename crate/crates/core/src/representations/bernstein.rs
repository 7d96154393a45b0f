//! Lévy–Khintchine (Bernstein) form of `W` on the closed right half-plane.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{finish, EvalResult, RepresentationId};
use crate::oracle::neg_recip_t;
use crate::quadrature::{self, gauss_legendre, QuadratureSpec, Rule};
use crate::{c64, Error, Result};

/// Fixed Gauss order of the inner `φ(ξ)` integral.
pub const BERNSTEIN_INNER_NODES: usize = 64;

/// `φ(ξ) = (1/π)∫₀^π exp(−ξ·v·csc v·e^{-v·cot v}) dv`, the density of
/// `ξ·dν/dξ`. Completely monotone, with `φ(0) = 1`.
pub fn varphi(xi: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(xi >= 0.0) || xi.is_infinite() {
        return Err(Error::domain(format!("φ(ξ) needs finite ξ ≥ 0, got {xi}")));
    }
    if xi == 0.0 {
        return Ok(1.0);
    }
    let q = quadrature::integrate(
        |v| c64((-xi / neg_recip_t(v)).exp() / PI, 0.0),
        0.0,
        PI,
        spec,
    )?
    .require_converged()?;
    Ok(q.value.re)
}

/// `φ` by a fixed Gauss rule, the inner integral of [`bernstein_w`].
struct FixedVarphi {
    /// `(1/g(v_k), w_k/π)` for each node.
    nodes: Vec<(f64, f64)>,
    memo: HashMap<u64, f64>,
}

impl FixedVarphi {
    fn new(order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        let half = 0.5 * PI;
        let nodes = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| (neg_recip_t(half + half * xi).recip(), half * wi / PI))
            .collect();
        FixedVarphi {
            nodes,
            memo: HashMap::new(),
        }
    }

    fn eval(&mut self, xi: f64) -> f64 {
        let nodes = &self.nodes;
        *self.memo.entry(xi.to_bits()).or_insert_with(|| {
            nodes
                .iter()
                .map(|&(inv_g, w)| w * (-xi * inv_g).exp())
                .sum()
        })
    }
}

/// `1 − e^{−w}` without cancellation for small `|w|`.
fn one_minus_exp_neg(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        // w − w²/2 + w³/6 − w⁴/24 + w⁵/120
        w * (1.0 - w * (0.5 - w * (1.0 / 6.0 - w * (1.0 / 24.0 - w / 120.0))))
    } else {
        1.0 - (-w).exp()
    }
}

/// `W(z) = ∫₀^∞ (1 − e^{−zξ})·φ(ξ) dξ/ξ` for `Re z ≥ 0`, with the inner
/// `φ` from a fixed [`BERNSTEIN_INNER_NODES`]-point Gauss rule.
pub fn bernstein_w(z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    bernstein_w_with(z, spec, BERNSTEIN_INNER_NODES)
}

/// [`bernstein_w`] with an explicit inner Gauss order.
pub fn bernstein_w_with(
    z: Complex64,
    outer: &QuadratureSpec,
    inner_nodes: usize,
) -> Result<EvalResult> {
    let rep = RepresentationId::BernsteinW;
    rep.domain().check(z)?;
    if inner_nodes < 2 {
        return Err(Error::InvalidSpec(format!("inner order {inner_nodes} < 2")));
    }
    let mut spec = *outer;
    if spec.rule == Rule::SemiInfinite {
        spec.rule = Rule::Adaptive;
    }
    let mut phi = FixedVarphi::new(inner_nodes);
    let q = quadrature::integrate_semi_infinite(
        |xi| {
            if xi == 0.0 {
                return z;
            }
            one_minus_exp_neg(z * xi) / xi * phi.eval(xi)
        },
        &spec,
    )?;
    finish(rep, &q, q.value, q.err_estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::w_principal;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::for_rule(Rule::SemiInfinite, 1e-11)
    }

    #[test]
    fn varphi_examples() {
        let m = QuadratureSpec::midpoint(1e-13);
        assert_eq!(varphi(0.0, &m).unwrap(), 1.0);
        let one = varphi(1.0, &m).unwrap();
        assert!(one > 0.0 && one < 1.0);
        let reference = varphi(1.0, &QuadratureSpec::midpoint(1e-15)).unwrap();
        assert!((one - reference).abs() < 1e-13);
        let far = varphi(200.0, &m).unwrap();
        assert!(far > 0.0 && far < 1e-30);
        assert!(varphi(-1.0, &m).unwrap_err().is_domain());
        // The fixed inner rule agrees with the refined one; 1/g has an
        // essential singularity at π, which limits Gauss convergence.
        let d = (FixedVarphi::new(64).eval(1.0) - one).abs();
        assert!(d < 1e-11, "{d:e}");
    }

    #[test]
    fn bernstein_examples() {
        assert_eq!(bernstein_w(c64(0.0, 0.0), &spec()).unwrap().value, c64(0.0, 0.0));
        for z in [c64(1.0, 0.0), c64(0.0, 1.0), c64(3.0, -2.0)] {
            let r = bernstein_w(z, &spec()).unwrap();
            assert!((r.value - w_principal(z).unwrap()).norm() < 1e-9, "z = {z}");
        }
        let r = bernstein_w(c64(0.0, 1.0), &spec()).unwrap();
        assert!((r.value - c64(0.374_699_0, 0.576_412_7)).norm() < 1e-7);
        assert!(bernstein_w(c64(-0.1, 1.0), &spec()).unwrap_err().is_domain());
    }
}
