//! Sharp and smoothed twisted sums, partial summation, and the Parseval
//! identity for the mean square over the twist.

use num_complex::Complex64;

use crate::coefficients::CoefficientTable;
use crate::error::{Error, Result};

/// One evaluated twisted sum together with the parameters that produced
/// it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub t: f64,
    pub alpha: f64,
    pub value: Complex64,
    pub kind: SumKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumKind {
    Sharp,
    /// Smoothed sum; carries the estimated magnitude of the terms beyond
    /// the end of the table.
    Smoothed { tail_estimate: f64 },
}

/// n * alpha mod 1, reduced to [-1/2, 1/2), computed in double-double
/// style: the product is split into a rounded part and its exact fma
/// remainder, the rounded part is reduced exactly, and the remainder is
/// added back. The reduction error stays near one ulp of the REDUCED
/// value even when n * alpha is of order 1e16, and integer shifts of
/// alpha change nothing, so phases behave as if computed in exact
/// rational arithmetic.
pub fn reduced_phase(n: u64, alpha: f64) -> f64 {
    let a = n as f64;
    let p = a * alpha;
    let e = a.mul_add(alpha, -p);
    let r = p - p.round();
    r + e
}

/// e(n alpha) with the reduced phase.
pub(crate) fn unit_phase(n: u64, alpha: f64) -> Complex64 {
    Complex64::cis(std::f64::consts::TAU * reduced_phase(n, alpha))
}

/// The sharp twisted sum over n <= t of a_n e(n alpha).
pub fn sharp_sum(table: &CoefficientTable, t: f64, alpha: f64) -> Result<SumResult> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("sum length must be positive, got {t}")));
    }
    let cut = t.floor() as usize;
    if cut > table.n_max() {
        return Err(Error::InsufficientTable {
            needed: cut as u64,
            available: table.n_max() as u64,
        });
    }
    let row = table.first_row();
    let mut value = Complex64::new(0.0, 0.0);
    for n in 1..=cut {
        value += row[n] * unit_phase(n as u64, alpha);
    }
    Ok(SumResult {
        t,
        alpha,
        value,
        kind: SumKind::Sharp,
    })
}

/// The smoothed two-sided sum over n != 0 of a_{|n|} e(n alpha) phi(n/t);
/// negative indices reuse a_{|n|}, the reflection convention used by the
/// summation identity. The tail beyond the table is estimated by scanning
/// |phi| out to n = n_max + 20t and scaling by the largest coefficient;
/// if that estimate exceeds `tol` the table is reported as too short,
/// with `needed` the index where the scanned tail first drops below a
/// per-term share of the tolerance.
pub fn smoothed_sum(
    table: &CoefficientTable,
    t: f64,
    alpha: f64,
    phi: impl Fn(f64) -> f64,
    tol: f64,
) -> Result<SumResult> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("sum length must be positive, got {t}")));
    }
    let row = table.first_row();
    let n_max = table.n_max();
    let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let span = (20.0 * t).ceil() as usize;
    let per_term = tol / (1.0 + span as f64) / (1.0 + scale);
    let mut tail = 0.0;
    let mut needed = n_max + span;
    let mut settled = false;
    for m in 1..=span {
        let n = n_max + m;
        let w = phi(n as f64 / t).abs() + phi(-(n as f64) / t).abs();
        tail += scale * w;
        if !settled && w <= per_term {
            needed = n;
            settled = true;
        } else if w > per_term {
            settled = false;
            needed = n_max + span;
        }
    }
    if tail > tol {
        return Err(Error::InsufficientTable {
            needed: needed as u64,
            available: n_max as u64,
        });
    }

    let mut value = Complex64::new(0.0, 0.0);
    for n in 1..=n_max {
        let phase = unit_phase(n as u64, alpha);
        let fwd = phi(n as f64 / t);
        let bwd = phi(-(n as f64) / t);
        if fwd != 0.0 {
            value += row[n] * fwd * phase;
        }
        if bwd != 0.0 {
            value += row[n] * bwd * phase.conj();
        }
    }
    Ok(SumResult {
        t,
        alpha,
        value,
        kind: SumKind::Smoothed { tail_estimate: tail },
    })
}

/// Abel summation: given a_1..a_K and weights b_1..b_K, returns
/// sum A_n (b_n - b_{n+1}) + A_K b_K with A_n the partial sums, which
/// equals sum a_n b_n identically.
pub fn partial_summation_transfer(a: &[Complex64], b: &[f64], k: usize) -> Result<Complex64> {
    if k < 1 {
        return Err(Error::Domain("partial summation needs K >= 1".into()));
    }
    if a.len() < k || b.len() < k {
        return Err(Error::Domain(format!(
            "partial summation over K = {k} given {} values and {} weights",
            a.len(),
            b.len()
        )));
    }
    let mut running = Complex64::new(0.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for n in 0..k - 1 {
        running += a[n];
        total += running * (b[n] - b[n + 1]);
    }
    running += a[k - 1];
    Ok(total + running * b[k - 1])
}

/// Absolute defect in the mean-square identity: the integral of
/// |S(t, alpha)|^2 over alpha in [0, 1), evaluated by equispaced
/// quadrature at 2T+1 nodes (exact for the degree involved), minus the
/// coefficient sum of squares.
pub fn parseval_residual(table: &CoefficientTable, t: usize) -> Result<f64> {
    if t < 1 || t > table.n_max() {
        return Err(Error::InsufficientTable {
            needed: t.max(1) as u64,
            available: table.n_max() as u64,
        });
    }
    let nodes = 2 * t + 1;
    let mut mean = 0.0;
    for j in 0..nodes {
        let alpha = j as f64 / nodes as f64;
        let s = sharp_sum(table, t as f64, alpha)?.value;
        mean += s.norm_sqr();
    }
    mean /= nodes as f64;
    let direct: f64 = table.first_row()[1..=t].iter().map(|a| a * a).sum();
    Ok((mean - direct).abs())
}
