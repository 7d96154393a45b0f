//! Integral representations of `W` and of functions of `W`.
//!
//! Every evaluator takes an argument and a [`QuadratureSpec`] and returns an
//! [`EvalResult`] whose [`Target`] says which function of `W` the value
//! approximates. [`evaluate`] dispatches on [`RepresentationId`] and checks
//! the argument against the representation's [`Domain`] first.
//!
//! Most integrands are written in terms of `g(v) = -1/t(v) ∈ (0, e]`
//! (see [`oracle::neg_recip_t`]) rather than `t(v)` itself, which overflows
//! as `v → π`.

mod bernstein;
mod pick;
mod poisson;
mod siewert;
mod stieltjes;


use std::fmt;

use num_complex::Complex64;

use crate::oracle;
use crate::quadrature::{self, QuadResult, QuadratureSpec, Rule};
use crate::{Error, Result, BRANCH_POINT, INV_E};

pub use bernstein::{bernstein_w, bernstein_w_with, varphi, BERNSTEIN_INNER_NODES};
pub use pick::{
    cauer_w_over_z, pick_exp_form, pick_kernel, pick_w, pick_w_over_z, pick_z_over_w,
    PickConstants,
};
pub use poisson::{poisson_1, poisson_2, poisson_wright};
pub use siewert::{
    bs_arctan, bs_branch_m1, bs_log_modulus, bs_siewert_complex, bs_siewert_real_arctan,
    bs_siewert_real_parts, DEFAULT_BRANCH_C,
};
pub use stieltjes::{inv_one_plus_w, inv_w, stieltjes_w_over_z, thorin_w, w_log_form, w_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepresentationId {
    StieltjesWOverZ,
    WPrime,
    InvOnePlusW,
    InvW,
    WLogForm,
    ThorinW,
    BernsteinW,
    PickW,
    PickExpForm,
    PickWOverZ,
    PickZOverW,
    CauerZ2,
    Poisson1,
    Poisson2,
    PoissonWright,
    BSLogModulus,
    BSArctan,
    BSSiewertComplex,
    BSSiewertReal2,
    BSSiewertReal3,
    BSBranchM1,
}

/// Which function of `W` an evaluator approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    W,
    WPrime,
    WOverZ,
    InvOnePlusW,
    InvW,
    ZOverW,
    /// `W₋₁(x)` on `[-1/e, 0)`.
    WBranchM1,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::W => "W",
            Target::WPrime => "W'",
            Target::WOverZ => "W/z",
            Target::InvOnePlusW => "1/(1+W)",
            Target::InvW => "1/W",
            Target::ZOverW => "z/W",
            Target::WBranchM1 => "W_-1",
        }
    }

    /// The target function evaluated through the oracle.
    pub fn oracle(self, z: Complex64) -> Result<Complex64> {
        if self == Target::WBranchM1 {
            if z.im != 0.0 {
                return Err(Error::domain("W₋₁ is evaluated on the real axis only"));
            }
            return oracle::w_branch_m1(z.re).map(|w| Complex64::new(w, 0.0));
        }
        if self == Target::WPrime {
            return oracle::w_derivative_oracle(z);
        }
        let w = oracle::w_principal(z)?;
        let zero = z.re == 0.0 && z.im == 0.0;
        Ok(match self {
            Target::W => w,
            Target::WOverZ if zero => Complex64::new(1.0, 0.0),
            Target::WOverZ => w / z,
            Target::InvOnePlusW => (1.0 + w).inv(),
            Target::InvW | Target::ZOverW if zero => {
                return Err(Error::domain("1/W and z/W need z ≠ 0"));
            }
            Target::InvW => w.inv(),
            Target::ZOverW => z / w,
            Target::WPrime | Target::WBranchM1 => unreachable!(),
        })
    }
}

/// Region of validity of a representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `ℂ \ (-∞, -1/e]`, optionally without `0`.
    CutPlane { exclude_zero: bool },
    /// `Re z ≥ 0` (`closed`) or `Re z > 0`.
    RightHalfPlane { closed: bool },
    /// `ℂ \ (-∞, 0]`.
    SlitPlane,
    /// Real `x` in the open interval `(lo, hi)`.
    RealInterval { lo: f64, hi: f64 },
    /// Real `x` with `-1/e < x < -(2c-1)·e^{1-2c}`.
    BranchM1Window { c: f64 },
}

impl Domain {
    pub fn contains(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        let real = z.im == 0.0;
        match *self {
            Domain::CutPlane { exclude_zero } => {
                !(real && z.re <= BRANCH_POINT) && !(exclude_zero && z.re == 0.0 && real)
            }
            Domain::RightHalfPlane { closed } => {
                if closed {
                    z.re >= 0.0
                } else {
                    z.re > 0.0
                }
            }
            Domain::SlitPlane => !(real && z.re <= 0.0),
            Domain::RealInterval { lo, hi } => real && z.re > lo && z.re < hi,
            Domain::BranchM1Window { c } => real && branch_m1_window(c).is_some_and(|(lo, hi)| z.re > lo && z.re < hi),
        }
    }

    pub fn check(&self, z: Complex64) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::domain(format!("z = {z} is outside {self}")))
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Domain::CutPlane { exclude_zero: false } => write!(f, "C \\ (-inf, -1/e]"),
            Domain::CutPlane { exclude_zero: true } => write!(f, "C \\ ((-inf, -1/e] U {{0}})"),
            Domain::RightHalfPlane { closed: true } => write!(f, "Re z >= 0"),
            Domain::RightHalfPlane { closed: false } => write!(f, "Re z > 0"),
            Domain::SlitPlane => write!(f, "C \\ (-inf, 0]"),
            Domain::RealInterval { lo, hi } => write!(f, "real x in ({lo}, {hi})"),
            Domain::BranchM1Window { c } => match branch_m1_window(c) {
                Some((lo, hi)) => write!(f, "real x in ({lo}, {hi}) for c = {c}"),
                None => write!(f, "empty (c = {c} must exceed 1)"),
            },
        }
    }
}

impl Domain {
    /// The standard validation grid: 12 real points at the midpoints of 12
    /// equal slices of `(−1/e, e)` clipped to the domain, then 12 complex
    /// points with `|z_k| = 0.1·1000^{k/11}` and arguments cycling through
    /// those of `±π/6, ±π/2, ±5π/6` that the domain admits.
    pub fn standard_grid(&self) -> Vec<Complex64> {
        use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_6};
        let (lo, hi) = match *self {
            Domain::CutPlane { .. } => (BRANCH_POINT, E),
            Domain::RightHalfPlane { .. } | Domain::SlitPlane => (0.0, E),
            Domain::RealInterval { lo, hi } => (lo.max(BRANCH_POINT), hi.min(E)),
            Domain::BranchM1Window { c } => branch_m1_window(c).unwrap_or((0.0, 0.0)),
        };
        let mut grid: Vec<Complex64> = (0..12)
            .map(|k| Complex64::new(lo + (hi - lo) * (k as f64 + 0.5) / 12.0, 0.0))
            .filter(|z| self.contains(*z))
            .collect();
        let args: Vec<f64> = [
            FRAC_PI_6,
            -FRAC_PI_6,
            FRAC_PI_2,
            -FRAC_PI_2,
            5.0 * FRAC_PI_6,
            -5.0 * FRAC_PI_6,
        ]
        .into_iter()
        .filter(|&a| match *self {
            Domain::CutPlane { .. } | Domain::SlitPlane => true,
            Domain::RightHalfPlane { closed } => {
                a.abs() < FRAC_PI_2 || (closed && a.abs() == FRAC_PI_2)
            }
            Domain::RealInterval { .. } | Domain::BranchM1Window { .. } => false,
        })
        .collect();
        if !args.is_empty() {
            for k in 0..12 {
                let r = 0.1 * 1000f64.powf(k as f64 / 11.0);
                let a = args[k % args.len()];
                let z = if a.abs() == FRAC_PI_2 {
                    Complex64::new(0.0, r * a.signum())
                } else {
                    Complex64::from_polar(r, a)
                };
                grid.push(z);
            }
        }
        grid
    }
}

/// `(-1/e, -(2c-1)·e^{1-2c})`, or `None` unless `c > 1`.
pub fn branch_m1_window(c: f64) -> Option<(f64, f64)> {
    (c > 1.0 && c.is_finite()).then(|| (BRANCH_POINT, -(2.0 * c - 1.0) * (1.0 - 2.0 * c).exp()))
}

impl RepresentationId {
    pub const ALL: [RepresentationId; 21] = [
        RepresentationId::StieltjesWOverZ,
        RepresentationId::WPrime,
        RepresentationId::InvOnePlusW,
        RepresentationId::InvW,
        RepresentationId::WLogForm,
        RepresentationId::ThorinW,
        RepresentationId::BernsteinW,
        RepresentationId::PickW,
        RepresentationId::PickExpForm,
        RepresentationId::PickWOverZ,
        RepresentationId::PickZOverW,
        RepresentationId::CauerZ2,
        RepresentationId::Poisson1,
        RepresentationId::Poisson2,
        RepresentationId::PoissonWright,
        RepresentationId::BSLogModulus,
        RepresentationId::BSArctan,
        RepresentationId::BSSiewertComplex,
        RepresentationId::BSSiewertReal2,
        RepresentationId::BSSiewertReal3,
        RepresentationId::BSBranchM1,
    ];

    /// Stable kebab-case tag used on the command line and in reports.
    pub fn name(self) -> &'static str {
        use RepresentationId::*;
        match self {
            StieltjesWOverZ => "stieltjes-w-over-z",
            WPrime => "w-prime",
            InvOnePlusW => "inv-one-plus-w",
            InvW => "inv-w",
            WLogForm => "w-log",
            ThorinW => "thorin",
            BernsteinW => "bernstein",
            PickW => "pick",
            PickExpForm => "pick-exp",
            PickWOverZ => "pick-w-over-z",
            PickZOverW => "pick-z-over-w",
            CauerZ2 => "cauer-z2",
            Poisson1 => "poisson1",
            Poisson2 => "poisson2",
            PoissonWright => "poisson-wright",
            BSLogModulus => "bs-log-modulus",
            BSArctan => "bs-arctan",
            BSSiewertComplex => "bs-siewert-complex",
            BSSiewertReal2 => "bs-siewert-real2",
            BSSiewertReal3 => "bs-siewert-real3",
            BSBranchM1 => "bs-branch-m1",
        }
    }

    pub fn from_name(s: &str) -> Option<RepresentationId> {
        Self::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn target(self) -> Target {
        use RepresentationId::*;
        match self {
            StieltjesWOverZ | PickExpForm | PickWOverZ | CauerZ2 => Target::WOverZ,
            WPrime => Target::WPrime,
            InvOnePlusW => Target::InvOnePlusW,
            InvW => Target::InvW,
            PickZOverW => Target::ZOverW,
            BSBranchM1 => Target::WBranchM1,
            WLogForm | ThorinW | BernsteinW | PickW | Poisson1 | Poisson2 | PoissonWright
            | BSLogModulus | BSArctan | BSSiewertComplex | BSSiewertReal2 | BSSiewertReal3 => {
                Target::W
            }
        }
    }

    pub fn domain(self) -> Domain {
        use RepresentationId::*;
        let e = std::f64::consts::E;
        match self {
            StieltjesWOverZ | WPrime | InvOnePlusW | ThorinW | PickW | PickExpForm
            | PickWOverZ => Domain::CutPlane {
                exclude_zero: false,
            },
            InvW | WLogForm | PickZOverW => Domain::CutPlane { exclude_zero: true },
            BernsteinW => Domain::RightHalfPlane { closed: true },
            CauerZ2 => Domain::RightHalfPlane { closed: false },
            Poisson1 | Poisson2 | BSLogModulus | BSArctan => Domain::RealInterval {
                lo: BRANCH_POINT,
                hi: e,
            },
            PoissonWright => Domain::RealInterval { lo: 0.0, hi: e },
            BSSiewertComplex => Domain::SlitPlane,
            BSSiewertReal2 | BSSiewertReal3 => Domain::RealInterval {
                lo: INV_E,
                hi: f64::INFINITY,
            },
            BSBranchM1 => Domain::BranchM1Window {
                c: DEFAULT_BRANCH_C,
            },
        }
    }

    /// True when the representation is only defined for real arguments.
    pub fn real_only(self) -> bool {
        matches!(
            self.domain(),
            Domain::RealInterval { .. } | Domain::BranchM1Window { .. }
        )
    }

    /// The rule suited to the integrand's smoothness: midpoint for integrands
    /// whose even periodic extension is smooth, Gauss–Legendre for smooth
    /// but non-periodic ones, adaptive where an endpoint is singular.
    pub fn default_rule(self) -> Rule {
        use RepresentationId::*;
        match self {
            StieltjesWOverZ | WPrime | InvOnePlusW | ThorinW | PickW | PickExpForm
            | PickWOverZ | CauerZ2 | Poisson1 | Poisson2 | BSLogModulus | BSArctan
            | BSBranchM1 => Rule::MidpointPeriodic,
            InvW | WLogForm | PickZOverW => Rule::GaussLegendre,
            PoissonWright => Rule::Adaptive,
            BernsteinW | BSSiewertComplex | BSSiewertReal2 | BSSiewertReal3 => {
                Rule::SemiInfinite
            }
        }
    }

    pub fn default_spec(self, tol: f64) -> QuadratureSpec {
        QuadratureSpec::for_rule(self.default_rule(), tol)
    }
}

impl fmt::Display for RepresentationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub nodes_used: usize,
    pub rep: RepresentationId,
    pub target: Target,
}

/// Evaluates `rep` at `z` after checking its domain. Real-only
/// representations require `Im z = 0`; [`RepresentationId::BSBranchM1`]
/// uses `c =` [`DEFAULT_BRANCH_C`].
pub fn evaluate(rep: RepresentationId, z: Complex64, spec: &QuadratureSpec) -> Result<EvalResult> {
    use RepresentationId::*;
    rep.domain().check(z)?;
    match rep {
        StieltjesWOverZ => stieltjes_w_over_z(z, spec),
        WPrime => w_prime(z, spec),
        InvOnePlusW => inv_one_plus_w(z, spec),
        InvW => inv_w(z, spec),
        WLogForm => w_log_form(z, spec),
        ThorinW => thorin_w(z, spec),
        BernsteinW => bernstein_w(z, spec),
        PickW => pick_w(z, spec),
        PickExpForm => pick_exp_form(z, spec),
        PickWOverZ => pick_w_over_z(z, spec),
        PickZOverW => pick_z_over_w(z, spec),
        CauerZ2 => cauer_w_over_z(z, spec),
        Poisson1 => poisson_1(z.re, spec),
        Poisson2 => poisson_2(z.re, spec),
        PoissonWright => poisson_wright(z.re, spec),
        BSLogModulus => bs_log_modulus(z.re, spec),
        BSArctan => bs_arctan(z.re, spec),
        BSSiewertComplex => bs_siewert_complex(z, spec),
        BSSiewertReal2 => bs_siewert_real_arctan(z.re, spec),
        BSSiewertReal3 => bs_siewert_real_parts(z.re, spec),
        BSBranchM1 => bs_branch_m1(z.re, DEFAULT_BRANCH_C, spec),
    }
}

/// A single definite integral `∫_a^b f`, the core of most representations.
pub struct Integral {
    pub a: f64,
    pub b: f64,
    f: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl Integral {
    pub(crate) fn new(a: f64, b: f64, f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Integral { a, b, f: Box::new(f) }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.f)(x)
    }

    pub fn integrate(&self, spec: &QuadratureSpec) -> Result<QuadResult> {
        quadrature::integrate(|x| (self.f)(x), self.a, self.b, spec)
    }
}

impl RepresentationId {
    /// The finite-interval integral behind `rep` at `z`, for the
    /// representations that reduce to one. Its value maps to the target
    /// function affinely or through `exp`/`ln`; see each evaluator.
    pub fn integral(self, z: Complex64) -> Option<Integral> {
        use RepresentationId::*;
        Some(match self {
            StieltjesWOverZ => stieltjes::stieltjes_integral(z),
            WPrime => stieltjes::w_prime_integral(z),
            InvOnePlusW => stieltjes::inv_one_plus_w_integral(z),
            InvW | WLogForm => stieltjes::inv_w_integral(z),
            ThorinW => stieltjes::thorin_integral(z),
            PickW | PickExpForm => pick::pick1_integral(z),
            PickWOverZ => pick::pick3_integral(z),
            PickZOverW => pick::pick4_integral(z),
            CauerZ2 => pick::cauer_integral(z),
            Poisson1 => poisson::poisson1_integral(z.re),
            Poisson2 => poisson::poisson2_integral(z.re),
            BSLogModulus => siewert::log_modulus_integral(z.re),
            BSArctan => siewert::arctan_integral(z.re),
            BernsteinW | PoissonWright | BSSiewertComplex | BSSiewertReal2 | BSSiewertReal3
            | BSBranchM1 => return None,
        })
    }
}

/// `N(v) = v² + (1 − v·cot v)²`, the density shared by the Stieltjes forms.
pub fn n_of_v(v: f64) -> f64 {
    let c = 1.0 - oracle::v_cot_v(v);
    v * v + c * c
}

/// `sin v / v`, finite at 0.
pub(crate) fn sinc(v: f64) -> f64 {
    oracle::v_csc_v(v).recip()
}

/// Wraps a converged quadrature into an [`EvalResult`], or reports
/// [`Error::NotConverged`] carrying the mapped value and error.
pub(crate) fn finish(
    rep: RepresentationId,
    q: &QuadResult,
    value: Complex64,
    err_estimate: f64,
) -> Result<EvalResult> {
    let err_estimate = if err_estimate.is_finite() {
        err_estimate
    } else {
        f64::INFINITY
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite { x: f64::NAN });
    }
    if !q.converged {
        return Err(Error::NotConverged {
            value,
            err_estimate,
            nodes: q.nodes_used,
        });
    }
    Ok(EvalResult {
        value,
        err_estimate,
        nodes_used: q.nodes_used,
        rep,
        target: rep.target(),
    })
}

/// Rescales the absolute tolerance of `spec` by `factor`.
pub(crate) fn scaled(spec: &QuadratureSpec, factor: f64) -> QuadratureSpec {
    let mut s = *spec;
    if factor.is_finite() && factor > 0.0 {
        s.tol = spec.tol * factor;
    }
    s
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn names_round_trip() {
        for rep in RepresentationId::ALL {
            assert_eq!(RepresentationId::from_name(rep.name()), Some(rep));
        }
        assert_eq!(RepresentationId::from_name("nope"), None);
    }

    #[test]
    fn domains() {
        let cut = RepresentationId::StieltjesWOverZ.domain();
        assert!(cut.contains(c64(-0.2, 0.0)));
        assert!(cut.contains(c64(-5.0, 1e-3)));
        assert!(!cut.contains(c64(-5.0, 0.0)));
        assert!(!cut.contains(c64(BRANCH_POINT, 0.0)));
        assert!(!RepresentationId::InvW.domain().contains(c64(0.0, 0.0)));
        assert!(!RepresentationId::Poisson1.domain().contains(c64(-0.5, 0.0)));
        assert!(!RepresentationId::Poisson1.domain().contains(c64(0.5, 0.1)));
        assert!(RepresentationId::BernsteinW.domain().contains(c64(0.0, 1.0)));
        assert!(!RepresentationId::CauerZ2.domain().contains(c64(0.0, 1.0)));
        assert!(!RepresentationId::BSSiewertComplex.domain().contains(c64(-2.0, 0.0)));
        assert!(RepresentationId::BSBranchM1.domain().contains(c64(-0.35, 0.0)));
        assert!(!RepresentationId::BSBranchM1.domain().contains(c64(-0.2, 0.0)));
    }

    #[test]
    fn standard_grids() {
        for rep in RepresentationId::ALL {
            let d = rep.domain();
            let grid = d.standard_grid();
            assert!(grid.len() >= 12, "{rep}");
            assert!(grid.iter().all(|z| d.contains(*z)), "{rep}");
            assert_eq!(grid.iter().any(|z| z.im != 0.0), !rep.real_only(), "{rep}");
        }
        let cauer = RepresentationId::CauerZ2.domain().standard_grid();
        assert!(cauer.iter().all(|z| z.re > 0.0));
        assert_eq!(cauer.len(), 24);
    }

    #[test]
    fn dispatcher_rejects_out_of_domain() {
        let spec = QuadratureSpec::default();
        let err = evaluate(RepresentationId::Poisson1, c64(-0.5, 0.0), &spec).unwrap_err();
        assert!(err.is_domain());
        let err = evaluate(RepresentationId::StieltjesWOverZ, c64(-1.0, 0.0), &spec).unwrap_err();
        assert!(err.is_domain());
    }

    #[test]
    fn targets_convert_oracle() {
        let z = c64(1.0, 2.0);
        let w = oracle::w_principal(z).unwrap();
        assert_eq!(Target::W.oracle(z).unwrap(), w);
        assert_eq!(Target::ZOverW.oracle(z).unwrap(), z / w);
        assert_eq!(Target::WOverZ.oracle(c64(0.0, 0.0)).unwrap(), c64(1.0, 0.0));
        assert!(Target::InvW.oracle(c64(0.0, 0.0)).is_err());
    }
}
