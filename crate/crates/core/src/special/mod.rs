//! Complex log-gamma, the gamma-type factor `G_delta`, Stirling-ratio and
//! multiplication-formula checks, and the two-factor asymptotic expansion
//! used to collapse a product of two `G_delta` factors into shifted single
//! factors.

mod asymptotic;
mod g_delta;
mod log_gamma;

pub use asymptotic::{asymptotic_pair, AsymptoticExpansion};
pub use g_delta::{
    g_delta, g_delta_ln, g_pair_collapse, g_stirling_ratio, gamma_multiplication_residual,
};
pub use log_gamma::log_gamma;

/// Distance to a pole below which gamma-type evaluations refuse to run.
/// Contour abscissae are chosen away from the pole lattice, so this only
/// guards misuse.
pub const POLE_EPS: f64 = 1e-8;
