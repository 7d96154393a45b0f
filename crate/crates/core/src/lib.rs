//! Principal-branch Lambert W evaluation through its integral representations.
//!
//! The crate is organized around four layers:
//!
//! * [`oracle`]: a Halley-iteration reference evaluator for `W₀` and `W₋₁`,
//!   plus the branch-cut parameterizations `t(v)`, `u(v)` and `s(v)`.
//! * [`quadrature`]: open quadrature rules with successive-refinement error
//!   estimates.
//! * [`representations`]: one evaluator per integral representation of `W`
//!   or a function of `W` (Stieltjes, Thorin, Bernstein, Pick, Cauer,
//!   Poisson and Burniston–Siewert forms).
//! * [`analysis`]: the Stieltjes measure and its moments, Padé approximants,
//!   the Sokal functions, complete-monotonicity checks and definite-integral
//!   identities.
//!
//! ```
//! use lwik::{oracle, representations::{self, RepresentationId}, quadrature::QuadratureSpec, c64};
//!
//! let z = c64(1.0, 0.0);
//! let omega = oracle::w_principal(z).unwrap();
//! let r = representations::evaluate(RepresentationId::ThorinW, z, &QuadratureSpec::default()).unwrap();
//! assert!((r.value - omega).norm() < 1e-9);
//! ```

pub mod analysis;
mod error;
pub mod oracle;
pub mod quadrature;
pub mod representations;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Scalar used for arguments, values of `W` and integrands.
pub type ComplexValue = Complex64;

/// Shorthand constructor for [`ComplexValue`].
#[inline]
pub const fn c64(re: f64, im: f64) -> ComplexValue {
    Complex64::new(re, im)
}

/// `1/e`, the distance from the origin to the branch point.
pub const INV_E: f64 = 0.367_879_441_171_442_33;

/// The branch point `-1/e`.
pub const BRANCH_POINT: f64 = -INV_E;
