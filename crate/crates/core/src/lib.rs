//! Voronoi summation on GL(3) and cancellation experiments for additively
//! twisted coefficient sums.
//!
//! The library has three layers. The bottom layer is special functions:
//! a complex log-gamma, the gamma-ratio factors `G_delta(s)` built from it,
//! and signed Mellin transforms of compactly supported bump data. The middle
//! layer evaluates the Voronoi transform `F` of a test function by contour
//! integration on a vertical line, cross-checked against a slow repeated
//! integral, and assembles both sides of the GL(3) Voronoi identity for
//! Hecke coefficient tables (Ramanujan tau, its symmetric square, and the
//! ternary divisor function). The top layer runs desk-scale experiments:
//! twisted sums `S(T, alpha)`, exponent fits over dyadic ranges of `T`,
//! Parseval and convolution-sharpening checks, and a second-moment exponent
//! calculator.

pub mod coefficients;
pub mod error;
pub mod harness;
pub mod mellin;
pub mod parity;
pub mod rational;
pub mod special;
pub mod twisted;
pub mod voronoi;

pub use error::{Error, Result};
pub use parity::Parity;
