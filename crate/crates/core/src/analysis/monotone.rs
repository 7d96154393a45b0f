//! Numerical complete-monotonicity test, `(−1)ⁿ f⁽ⁿ⁾(x) ≥ 0`, and the corpus
//! of `W`-based functions known to be Stieltjes or completely monotone.

use std::fmt;

use crate::oracle::w_principal;
use crate::quadrature::QuadratureSpec;
use crate::representations::varphi;
use crate::{c64, Error, Result};

/// Highest derivative order the difference tower supports.
pub const MAX_ORDER: usize = 8;

fn w(x: f64) -> Result<f64> {
    Ok(w_principal(c64(x, 0.0))?.re)
}

/// A function from the corpus, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CmFunction {
    /// `1/(c + W(x))`, `c ≥ 0`.
    InvCPlusW { c: f64 },
    /// `W^α(1/x)`, `0 ≤ α ≤ 1`.
    WPowOfInv { alpha: f64 },
    /// `x^β·W^β(1/x)`, `−1 ≤ β ≤ 0`.
    XWOfInvPow { beta: f64 },
    /// `W(x)/[x(c + W(x))]`, `c ≥ 0`.
    WOverXCPlusW { c: f64 },
    /// `1/W(x) − 1/x`.
    InvWMinusInvX,
    /// `c + W(x^β)`, `c ≥ 0`, `−1 ≤ β ≤ 0`.
    CPlusWOfPow { c: f64, beta: f64 },
    /// `1/(c + W(x^α))`, `c ≥ 0`, `0 ≤ α ≤ 1`.
    InvCPlusWOfPow { c: f64, alpha: f64 },
    /// `x^{αβγ}·W^{−αγ}(x^β)·[1 + W(x^β)]^{1−γ}`.
    MixedProduct { alpha: f64, beta: f64, gamma: f64 },
    /// `1/(c + x^α)`, `0 ≤ α ≤ 1`, `c ≥ 0`.
    InvCPlusXPow { c: f64, alpha: f64 },
    /// `1 − x^α·W^α(1/x)`, `0 ≤ α ≤ 1`.
    OneMinusXWOfInvPow { alpha: f64 },
    /// `1 − x^{−αβ}·W^α(x^β)·[1 + W(x^β)]^{−α}`, `0 ≤ α ≤ 1`, `−1 ≤ β ≤ 0`.
    OneMinusRatioPow { alpha: f64, beta: f64 },
    /// `x^λ·W(x)`, `λ ≤ −1`.
    XPowW { lambda: f64 },
    /// `x^λ·W^α(x^β)·[1 + W(x^β)]^γ`, `α, γ ≥ 0`, `−1 ≤ β ≤ 0`, `λ ≤ 0`.
    XPowWOfPow { lambda: f64, alpha: f64, beta: f64, gamma: f64 },
    /// `x^λ·W^α(x^{−β})·[1 + W(x^{−β})]^γ`, `α, γ ≤ 0`, `−1 ≤ β ≤ 0`, `λ ≤ 0`.
    XPowWOfNegPow { lambda: f64, alpha: f64, beta: f64, gamma: f64 },
    /// `1 − x^{−αβγ}·W^{αγ}(x^β)·[1 + W(x^β)]^{γ−1}`.
    OneMinusBernstein { alpha: f64, beta: f64, gamma: f64 },
    /// `W(x)/x`.
    WOverX,
    /// `W(x)`, a Bernstein function and not completely monotone.
    W,
    /// The Lévy density `φ(ξ)` of `W`.
    Varphi,
}

/// Stable ids, in the order used by [`CmFunction::from_id`].
pub const CM_IDS: [&str; 18] = [
    "s-a", "s-b", "s-c", "s-d", "s-e", "s-f", "s-g", "s-h", "s-i", "s-j", "s-k", "cm-a", "cm-b",
    "cm-c", "cm-d", "w-over-x", "w", "varphi",
];

fn param_names(id: &str) -> Option<&'static [&'static str]> {
    Some(match id {
        "s-a" | "s-d" => &["c"],
        "s-b" | "s-j" => &["alpha"],
        "s-c" => &["beta"],
        "s-e" | "w-over-x" | "w" | "varphi" => &[],
        "s-f" => &["c", "beta"],
        "s-g" | "s-i" => &["c", "alpha"],
        "s-h" | "cm-d" => &["alpha", "beta", "gamma"],
        "s-k" => &["alpha", "beta"],
        "cm-a" => &["lambda"],
        "cm-b" | "cm-c" => &["lambda", "alpha", "beta", "gamma"],
        _ => return None,
    })
}

fn in_range(v: f64, lo: f64, hi: f64) -> bool {
    v >= lo && v <= hi
}

impl CmFunction {
    /// Builds a corpus member from its id and positional parameters (see
    /// [`CmFunction::param_names`]).
    pub fn from_id(id: &str, params: &[f64]) -> Result<CmFunction> {
        use CmFunction::*;
        let names = param_names(id).ok_or_else(|| {
            Error::InvalidSpec(format!("unknown function id {id:?}; known: {}", CM_IDS.join(", ")))
        })?;
        if params.len() != names.len() {
            return Err(Error::InvalidSpec(format!(
                "{id} takes {} parameter(s) ({}), got {}",
                names.len(),
                names.join(", "),
                params.len()
            )));
        }
        let p = |i: usize| params[i];
        let f = match id {
            "s-a" => InvCPlusW { c: p(0) },
            "s-b" => WPowOfInv { alpha: p(0) },
            "s-c" => XWOfInvPow { beta: p(0) },
            "s-d" => WOverXCPlusW { c: p(0) },
            "s-e" => InvWMinusInvX,
            "s-f" => CPlusWOfPow { c: p(0), beta: p(1) },
            "s-g" => InvCPlusWOfPow { c: p(0), alpha: p(1) },
            "s-h" => MixedProduct { alpha: p(0), beta: p(1), gamma: p(2) },
            "s-i" => InvCPlusXPow { c: p(0), alpha: p(1) },
            "s-j" => OneMinusXWOfInvPow { alpha: p(0) },
            "s-k" => OneMinusRatioPow { alpha: p(0), beta: p(1) },
            "cm-a" => XPowW { lambda: p(0) },
            "cm-b" => XPowWOfPow { lambda: p(0), alpha: p(1), beta: p(2), gamma: p(3) },
            "cm-c" => XPowWOfNegPow { lambda: p(0), alpha: p(1), beta: p(2), gamma: p(3) },
            "cm-d" => OneMinusBernstein { alpha: p(0), beta: p(1), gamma: p(2) },
            "w-over-x" => WOverX,
            "w" => W,
            _ => Varphi,
        };
        if !f.params_admissible() {
            return Err(Error::domain(format!("parameters {params:?} outside the admissible range of {id}")));
        }
        Ok(f)
    }

    pub fn id(&self) -> &'static str {
        use CmFunction::*;
        match self {
            InvCPlusW { .. } => "s-a",
            WPowOfInv { .. } => "s-b",
            XWOfInvPow { .. } => "s-c",
            WOverXCPlusW { .. } => "s-d",
            InvWMinusInvX => "s-e",
            CPlusWOfPow { .. } => "s-f",
            InvCPlusWOfPow { .. } => "s-g",
            MixedProduct { .. } => "s-h",
            InvCPlusXPow { .. } => "s-i",
            OneMinusXWOfInvPow { .. } => "s-j",
            OneMinusRatioPow { .. } => "s-k",
            XPowW { .. } => "cm-a",
            XPowWOfPow { .. } => "cm-b",
            XPowWOfNegPow { .. } => "cm-c",
            OneMinusBernstein { .. } => "cm-d",
            WOverX => "w-over-x",
            W => "w",
            Varphi => "varphi",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        param_names(self.id()).expect("every variant has an id")
    }

    pub fn params(&self) -> Vec<f64> {
        use CmFunction::*;
        match *self {
            InvCPlusW { c } | WOverXCPlusW { c } => vec![c],
            WPowOfInv { alpha } | OneMinusXWOfInvPow { alpha } => vec![alpha],
            XWOfInvPow { beta } => vec![beta],
            InvWMinusInvX | WOverX | W | Varphi => vec![],
            CPlusWOfPow { c, beta } => vec![c, beta],
            InvCPlusWOfPow { c, alpha } | InvCPlusXPow { c, alpha } => vec![c, alpha],
            MixedProduct { alpha, beta, gamma } | OneMinusBernstein { alpha, beta, gamma } => {
                vec![alpha, beta, gamma]
            }
            OneMinusRatioPow { alpha, beta } => vec![alpha, beta],
            XPowW { lambda } => vec![lambda],
            XPowWOfPow { lambda, alpha, beta, gamma }
            | XPowWOfNegPow { lambda, alpha, beta, gamma } => vec![lambda, alpha, beta, gamma],
        }
    }

    /// Whether the parameters lie in the range for which the function is
    /// claimed completely monotone.
    pub fn params_admissible(&self) -> bool {
        use CmFunction::*;
        let unit = |v: f64| in_range(v, 0.0, 1.0);
        let neg_unit = |v: f64| in_range(v, -1.0, 0.0);
        match *self {
            InvCPlusW { c } | WOverXCPlusW { c } => c >= 0.0,
            WPowOfInv { alpha } | OneMinusXWOfInvPow { alpha } => unit(alpha),
            XWOfInvPow { beta } => neg_unit(beta),
            InvWMinusInvX | WOverX | W | Varphi => true,
            CPlusWOfPow { c, beta } => c >= 0.0 && neg_unit(beta),
            InvCPlusWOfPow { c, alpha } | InvCPlusXPow { c, alpha } => c >= 0.0 && unit(alpha),
            MixedProduct { alpha, beta, gamma } | OneMinusBernstein { alpha, beta, gamma } => {
                unit(alpha) && neg_unit(beta) && unit(gamma)
            }
            OneMinusRatioPow { alpha, beta } => unit(alpha) && neg_unit(beta),
            XPowW { lambda } => lambda <= -1.0,
            XPowWOfPow { lambda, alpha, beta, gamma } => {
                alpha >= 0.0 && gamma >= 0.0 && neg_unit(beta) && lambda <= 0.0
            }
            XPowWOfNegPow { lambda, alpha, beta, gamma } => {
                alpha <= 0.0 && gamma <= 0.0 && neg_unit(beta) && lambda <= 0.0
            }
        }
    }

    /// False only for the negative control `W`.
    pub fn expected_cm(&self) -> bool {
        !matches!(self, CmFunction::W)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        use CmFunction::*;
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::domain(format!("corpus functions need x > 0, got {x}")));
        }
        Ok(match *self {
            InvCPlusW { c } => 1.0 / (c + w(x)?),
            WPowOfInv { alpha } => w(1.0 / x)?.powf(alpha),
            XWOfInvPow { beta } => (x * w(1.0 / x)?).powf(beta),
            WOverXCPlusW { c } => {
                let wx = w(x)?;
                wx / (x * (c + wx))
            }
            InvWMinusInvX => 1.0 / w(x)? - 1.0 / x,
            CPlusWOfPow { c, beta } => c + w(x.powf(beta))?,
            InvCPlusWOfPow { c, alpha } => 1.0 / (c + w(x.powf(alpha))?),
            MixedProduct { alpha, beta, gamma } => {
                let y = x.powf(beta);
                let wy = w(y)?;
                // x^{αβγ}W^{−αγ}(x^β) = (x^β/W(x^β))^{αγ}
                (y / wy).powf(alpha * gamma) * (1.0 + wy).powf(1.0 - gamma)
            }
            InvCPlusXPow { c, alpha } => 1.0 / (c + x.powf(alpha)),
            OneMinusXWOfInvPow { alpha } => 1.0 - (x * w(1.0 / x)?).powf(alpha),
            OneMinusRatioPow { alpha, beta } => {
                let y = x.powf(beta);
                let wy = w(y)?;
                1.0 - (wy / (y * (1.0 + wy))).powf(alpha)
            }
            XPowW { lambda } => x.powf(lambda) * w(x)?,
            XPowWOfPow { lambda, alpha, beta, gamma } => {
                let wy = w(x.powf(beta))?;
                x.powf(lambda) * wy.powf(alpha) * (1.0 + wy).powf(gamma)
            }
            XPowWOfNegPow { lambda, alpha, beta, gamma } => {
                let wy = w(x.powf(-beta))?;
                x.powf(lambda) * wy.powf(alpha) * (1.0 + wy).powf(gamma)
            }
            OneMinusBernstein { alpha, beta, gamma } => {
                let y = x.powf(beta);
                let wy = w(y)?;
                1.0 - (wy / y).powf(alpha * gamma) * (1.0 + wy).powf(gamma - 1.0)
            }
            WOverX => w(x)? / x,
            W => w(x)?,
            Varphi => varphi(x, &QuadratureSpec::midpoint(1e-15))?,
        })
    }

    /// Two interior instances of each entry of the Stieltjes list.
    pub fn stieltjes_corpus() -> Vec<CmFunction> {
        use CmFunction::*;
        vec![
            InvCPlusW { c: 0.5 },
            InvCPlusW { c: 2.0 },
            WPowOfInv { alpha: 0.3 },
            WPowOfInv { alpha: 0.8 },
            XWOfInvPow { beta: -0.4 },
            XWOfInvPow { beta: -0.9 },
            WOverXCPlusW { c: 0.5 },
            WOverXCPlusW { c: 2.0 },
            InvWMinusInvX,
            InvWMinusInvX,
            CPlusWOfPow { c: 0.5, beta: -0.5 },
            CPlusWOfPow { c: 2.0, beta: -0.8 },
            InvCPlusWOfPow { c: 0.5, alpha: 0.5 },
            InvCPlusWOfPow { c: 2.0, alpha: 0.8 },
            MixedProduct { alpha: 0.5, beta: -0.5, gamma: 0.5 },
            MixedProduct { alpha: 0.8, beta: -0.3, gamma: 0.2 },
            InvCPlusXPow { c: 0.5, alpha: 0.5 },
            InvCPlusXPow { c: 2.0, alpha: 0.8 },
            OneMinusXWOfInvPow { alpha: 0.3 },
            OneMinusXWOfInvPow { alpha: 0.8 },
            OneMinusRatioPow { alpha: 0.5, beta: -0.5 },
            OneMinusRatioPow { alpha: 0.8, beta: -0.3 },
        ]
        .into_iter()
        .enumerate()
        // (e) has no parameters; keep a single instance.
        .filter(|(i, _)| *i != 9)
        .map(|(_, f)| f)
        .collect()
    }

    /// Two interior instances of each entry of the completely monotone list.
    pub fn cm_corpus() -> Vec<CmFunction> {
        use CmFunction::*;
        vec![
            XPowW { lambda: -1.2 },
            XPowW { lambda: -2.0 },
            XPowWOfPow { lambda: -0.5, alpha: 0.5, beta: -0.5, gamma: 1.0 },
            XPowWOfPow { lambda: -0.2, alpha: 1.5, beta: -0.8, gamma: 0.5 },
            XPowWOfNegPow { lambda: -0.5, alpha: -0.5, beta: -0.5, gamma: -1.0 },
            XPowWOfNegPow { lambda: -0.2, alpha: -1.5, beta: -0.8, gamma: -0.5 },
            OneMinusBernstein { alpha: 0.5, beta: -0.5, gamma: 0.5 },
            OneMinusBernstein { alpha: 0.8, beta: -0.3, gamma: 0.2 },
        ]
    }
}

impl fmt::Display for CmFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())?;
        let names = self.param_names();
        if !names.is_empty() {
            let parts: Vec<String> = names
                .iter()
                .zip(self.params())
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmViolation {
    pub order: usize,
    pub x: f64,
    /// The sign-adjusted derivative estimate `(−1)ⁿ f⁽ⁿ⁾(x)`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMReport {
    pub function_id: String,
    pub orders_checked: usize,
    pub grid: Vec<f64>,
    pub violations: Vec<CmViolation>,
    /// Depth of the worst violation below its slack; `0` on a pass.
    pub max_margin: f64,
}

impl CMReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_failing_order(&self) -> Option<usize> {
        self.violations.iter().map(|v| v.order).min()
    }
}

/// `n` points from `a` to `b`, geometrically spaced.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64))
            .collect(),
    }
}

/// `n` points from `a` to `b`, evenly spaced.
pub fn linear_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Central `n`-th difference quotient of `f` at `x` with step `h`.
fn central_difference(f: &impl Fn(f64) -> Result<f64>, x: f64, n: usize, h: f64) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(n, k) * f(x + (0.5 * n as f64 - k as f64) * h)?;
    }
    Ok(sum / h.powi(n as i32))
}

/// Step of order `n` at `x`: `10⁻²·x·2^{n/2}`.
fn step(x: f64, n: usize) -> f64 {
    1e-2 * x * 2f64.powf(0.5 * n as f64)
}

/// `(−1)ⁿ f⁽ⁿ⁾(x)` from Richardson-extrapolated central differences, with
/// the sign-test slack `max(10⁻¹⁰, 10⁻³·(h/x)²·n!·|f|/xⁿ)`.
fn signed_derivative(f: &impl Fn(f64) -> Result<f64>, x: f64, n: usize, fx: f64) -> Result<(f64, f64)> {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    if n == 0 {
        return Ok((fx, 1e-10));
    }
    let h = step(x, n);
    let coarse = central_difference(f, x, n, h)?;
    let fine = central_difference(f, x, n, 0.5 * h)?;
    let d = (4.0 * fine - coarse) / 3.0;
    let scale = fx.abs() / x.powi(n as i32);
    let slack = (1e-3 * (h / x).powi(2) * factorial(n) * scale).max(1e-10);
    let roundoff = 10.0 * 2f64.powi(n as i32) * f64::EPSILON * fx.abs() / (0.5 * h).powi(n as i32);
    if roundoff > d.abs() && roundoff > slack {
        return Err(Error::StepTooSmall { order: n, x });
    }
    Ok((sign * d, slack))
}

/// Checks `(−1)ⁿ f⁽ⁿ⁾(x) ≥ −slack` for `n = 0 … order` at every grid point.
pub fn cm_check_fn(
    function_id: &str,
    f: impl Fn(f64) -> Result<f64>,
    order: usize,
    grid: &[f64],
) -> Result<CMReport> {
    if order > MAX_ORDER {
        return Err(Error::InvalidSpec(format!("order {order} exceeds {MAX_ORDER}")));
    }
    if grid.is_empty() {
        return Err(Error::InvalidSpec("empty grid".into()));
    }
    let mut violations = Vec::new();
    let mut max_margin: f64 = 0.0;
    for &x in grid {
        // The widest stencil reaches x ± order·h/2; keep it inside (0, ∞).
        if !(x > 0.0) || 0.5 * order as f64 * step(x, order) >= x {
            return Err(Error::domain(format!("grid point {x} too close to 0")));
        }
        let fx = f(x)?;
        for n in 0..=order {
            let (value, slack) = signed_derivative(&f, x, n, fx)?;
            if value < -slack {
                violations.push(CmViolation { order: n, x, value });
                max_margin = max_margin.max(-value - slack);
            }
        }
    }
    Ok(CMReport {
        function_id: function_id.to_string(),
        orders_checked: order,
        grid: grid.to_vec(),
        violations,
        max_margin,
    })
}

/// [`cm_check_fn`] for a corpus member.
pub fn cm_check(f: &CmFunction, order: usize, grid: &[f64]) -> Result<CMReport> {
    cm_check_fn(&f.to_string(), |x| f.eval(x), order, grid)
}

/// The standard grid: 16 log-spaced points in `[0.3, 30]`.
pub fn default_cm_grid() -> Vec<f64> {
    log_grid(0.3, 30.0, 16)
}
