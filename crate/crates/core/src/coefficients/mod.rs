//! Coefficient families for the experiments: Ramanujan tau and its GL(2)
//! normalization, the symmetric-square degree-3 lift, the triple divisor
//! function, bi-indexed Hecke arrays, and their cached storage.

mod cache;
mod sym2;
mod tables;
mod tau;

pub use cache::{load_cache, save_cache, CACHE_FORMAT_VERSION};
pub use sym2::sym2_coefficients;
pub use tables::{
    d3_coefficients, d3_table, gl2_table, rankin_selberg_slope, sym2_table, CoefficientTable,
    EmbeddingParams, FormDescriptor, FormKind,
};
pub(crate) use tables::least_squares_slope;
pub use tau::{gl2_normalized, ramanujan_tau};

/// Ceiling on first-row table lengths; protects the eta-product builder from
/// runaway requests.
pub const COEFFICIENT_CAP: usize = 10_000_000;
