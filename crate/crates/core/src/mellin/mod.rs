//! Signed Mellin transforms, the compactly supported test-function
//! family, and the contour-integral transform that turns a test function
//! on one side of the summation identity into the kernel on the other.

mod bump;
mod continuation;
mod contour;
mod family;
mod grid;
mod oracle;
mod signed;

pub use bump::{
    bump_hat, bump_hat_sine, bump_profile, bump_profile_complex, bump_profile_prime,
    bump_profile_prime_complex, BumpSpec, HAT_R_MAX,
};
pub use contour::{voronoi_transform_f, FValue, VerticalLineSpec};
pub use family::{build_test_function, TestFunctionFamily};
pub use oracle::{direct_f_oracle, synthetic_contour_reference};
pub use signed::{fourier_transform, mellin_fourier_residual, signed_mellin};

pub(crate) use continuation::PhiMellin;
pub(crate) use contour::{assemble_line_grid, transform_grid, FGrid, Route};
pub(crate) use family::PhiPiece;

pub(crate) use bump::bump_hat_quadrature;
pub(crate) use grid::{UniformGrid, UniformGridComplex};
pub(crate) use signed::signed_mellin_complex;
