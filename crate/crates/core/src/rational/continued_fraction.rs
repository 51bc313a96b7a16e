use crate::error::{Error, Result};

// Gauss-map cutoffs: a fractional part below RATIONAL_EPS is treated as an
// exact rational hit, and a partial quotient beyond QUOTIENT_CAP means the
// remaining digits are floating-point noise rather than structure.
const RATIONAL_EPS: f64 = 1e-14;
const QUOTIENT_CAP: f64 = 1e12;

/// One continued-fraction convergent p/q of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convergent {
    pub p: i64,
    /// always positive
    pub q: i64,
    /// position in the expansion, starting at 0
    pub index: usize,
    /// the partial quotient a_k that produced this convergent
    pub partial_quotient: i64,
}

/// Continued-fraction convergents of `alpha` by the Gauss map, at most
/// `max_depth` of them. Stops early when `alpha` is (numerically) rational.
pub fn continued_fraction(alpha: f64, max_depth: usize) -> Vec<Convergent> {
    assert!(max_depth >= 1, "need at least one convergent");
    assert!(alpha.is_finite(), "cannot expand a non-finite number");
    let mut out = Vec::new();
    let (mut p_prev, mut p_prev2) = (1i64, 0i64);
    let (mut q_prev, mut q_prev2) = (0i64, 1i64);
    let mut x = alpha;
    for index in 0..max_depth {
        let a = x.floor();
        if a.abs() > QUOTIENT_CAP {
            break;
        }
        let a_int = a as i64;
        let (Some(p), Some(q)) = (
            a_int
                .checked_mul(p_prev)
                .and_then(|v| v.checked_add(p_prev2)),
            a_int
                .checked_mul(q_prev)
                .and_then(|v| v.checked_add(q_prev2)),
        ) else {
            break;
        };
        out.push(Convergent {
            p,
            q,
            index,
            partial_quotient: a_int,
        });
        (p_prev2, p_prev) = (p_prev, p);
        (q_prev2, q_prev) = (q_prev, q);
        let frac = x - a;
        if frac < RATIONAL_EPS {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

/// The approximant a/c = -p_k/q_k matched to a sum length `T`, together
/// with the induced oscillation scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximantChoice {
    pub a: i64,
    /// always positive
    pub c: i64,
    /// Y = T |alpha + a/c|
    pub y: f64,
    /// index k of the chosen convergent
    pub index: usize,
}

/// Choose the convergent with q_k^2 <= T <= q_{k+1}^2 and package it as the
/// additive twist a/c = -p_k/q_k. For terminating expansions with no
/// further convergent the last one is used, and Y may then be 0.
pub fn select_approximant(alpha: f64, t: f64) -> Result<ApproximantChoice> {
    if !(t >= 1.0) {
        return Err(Error::Domain(format!(
            "approximant selection needs T >= 1, got {t}"
        )));
    }
    let convergents = continued_fraction(alpha, 64);
    let mut chosen = convergents[0];
    for conv in &convergents {
        let q = conv.q as f64;
        if q * q <= t {
            chosen = *conv;
        } else {
            break;
        }
    }
    let (a, c) = (-chosen.p, chosen.q);
    let y = t * (alpha + a as f64 / c as f64).abs();
    Ok(ApproximantChoice {
        a,
        c,
        y,
        index: chosen.index,
    })
}
