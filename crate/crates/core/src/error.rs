use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),

    /// Halley or Newton iteration failed to reach the residual tolerance.
    #[error("iteration failed to converge after {iterations} steps (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("non-finite integrand value at x = {x}")]
    NonFinite { x: f64 },

    /// Quadrature ran out of refinements. The best available estimate is kept.
    #[error("quadrature did not converge: value {value}, error estimate {err_estimate:e} after {nodes} nodes")]
    NotConverged {
        value: Complex64,
        err_estimate: f64,
        nodes: usize,
    },

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),

    #[error("Padé linear system is singular (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("finite-difference tower of order {order} lost all significant digits at x = {x}")]
    StepTooSmall { order: usize, x: f64 },

    #[error("simple pole at z = 0")]
    Pole,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}
