//! Diophantine and modular arithmetic: continued fractions and the
//! approximant/oscillation-scale selection, modular inverses, divisors,
//! the Moebius function, and Kloosterman sums.

mod arith;
mod continued_fraction;
mod kloosterman;

pub use arith::{divisors, gcd, mobius, mod_inverse};
pub use continued_fraction::{
    continued_fraction, select_approximant, ApproximantChoice, Convergent,
};
pub use kloosterman::{kloosterman, KloostermanKernel, MODULUS_CAP};
