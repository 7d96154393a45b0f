//! Checks of structural claims about `W`: the Stieltjes measure and its
//! moments, Padé pole interlacing, the anti-Herglotz property of the
//! `F₀`/`F₁` functions, complete monotonicity of the corpus, and definite
//! integral identities.
//!
//! Results are returned as plain report structs; nothing here does I/O.

mod identities;
mod measure;
mod monotone;
mod pade;
mod sokal;

pub use identities::{bernstein_levy_density, closing_identities, nuttall_identity, IdentityResult};
pub use measure::{
    expected_moment, hankel_determinants, moment_over_cut_parameter, phi_measure,
    stieltjes_moments, MomentTable, HANKEL_MAX_ORDER,
};
pub use monotone::{
    cm_check, cm_check_fn, default_cm_grid, linear_grid, log_grid, CMReport, CmFunction,
    CmViolation, CM_IDS, MAX_ORDER,
};
pub use pade::{
    alternate, interlace, pade_staircase_report, pade_w_over_z, w_over_z_coefficient,
    InterlaceCheck, PadeApproximant, PadeReport, PoleCheck, MAX_DEGREE, POLE_MARGIN, POLE_SLACK,
    TRUSTED_DEGREE,
};
pub use sokal::{
    anti_herglotz_grid_check, default_upper_half_plane_grid, sokal_f0, sokal_f0_regular,
    sokal_f1, sokal_f1_regular, sokal_pole_residue, upper_half_plane_grid, AntiHerglotzReport,
    HerglotzCandidate, ANTI_HERGLOTZ_SLACK,
};
