//! The summation identity: both sides, residuals, and scaling experiments.
