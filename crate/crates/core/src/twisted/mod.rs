//! Additively twisted coefficient sums: sharp and smoothed evaluation,
//! partial summation, the Parseval mean-square identity, growth-exponent
//! fitting, and the kernel convolution that sharpens smoothed sums.

mod fit;
mod kernel;
mod sums;

pub use fit::{
    adversarial_alphas, exponent_fit, ones_table, write_sweep_csv, ExponentFit, SweepRow,
};
pub use kernel::{
    default_sharpening_bump, dirichlet_kernel, kernel_l1_norm, sharpen_by_convolution, KernelSpec,
};
pub use sums::{
    parseval_residual, partial_summation_transfer, reduced_phase, sharp_sum, smoothed_sum,
    SumKind, SumResult,
};
