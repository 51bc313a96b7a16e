//! Growth-exponent estimation for twisted sums: scan an adversarial set
//! of twists, refine around the maximizer, and fit the growth of the
//! resulting envelope.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use super::sums::sharp_sum;
use crate::coefficients::{least_squares_slope, CoefficientTable, FormDescriptor};
use crate::error::{Error, Result};

/// One evaluated point of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub alpha: f64,
    pub value: Complex64,
}

/// Result of fitting |S(T, alpha)| growth in T.
///
/// The supremum over twists is approximated from below: a fixed
/// adversarial set (badly approximable irrationals, a small-denominator
/// rational, zero, and seeded random points) plus a deterministic local
/// refinement around each length's maximizer. The fitted exponent is
/// therefore a lower bound on the true uniform growth rate.
#[derive(Debug, Clone)]
pub struct ExponentFit {
    /// Least-squares slope of log max|S| against log T.
    pub beta: f64,
    /// Every (T, alpha) pair evaluated in the base scan.
    pub rows: Vec<SweepRow>,
    /// Per-length refined maxima (T, max |S|).
    pub envelope: Vec<(f64, f64)>,
    /// Root-mean-square residual of the fit in log space.
    pub rms: f64,
}

/// The default adversarial twist set: golden ratio and silver ratio
/// fractional parts (the classic badly approximable points), a
/// small-denominator rational, zero, and ten seeded uniform points.
pub fn adversarial_alphas() -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut alphas = vec![
        0.618_033_988_749_894_9,
        0.414_213_562_373_095_1,
        1.0 / 3.0,
        0.0,
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x54776973_74536574);
    alphas.extend((0..10).map(|_| rng.gen_range(0.0..1.0)));
    alphas
}

/// Fits the growth exponent of max_alpha |S(T, alpha)| over the grid.
/// The grid must span at least two decades and the twist set must be
/// nonempty.
pub fn exponent_fit(
    table: &CoefficientTable,
    t_grid: &[f64],
    alpha_set: &[f64],
) -> Result<ExponentFit> {
    if alpha_set.is_empty() {
        return Err(Error::Domain("twist set must be nonempty".into()));
    }
    let (lo, hi) = t_grid
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    if t_grid.len() < 2 || !(lo >= 1.0) || hi / lo < 100.0 {
        return Err(Error::Domain(format!(
            "length grid must span two decades above 1, got [{lo}, {hi}]"
        )));
    }

    let pairs: Vec<(f64, f64)> = t_grid
        .iter()
        .flat_map(|&t| alpha_set.iter().map(move |&a| (t, a)))
        .collect();
    let rows: Vec<SweepRow> = pairs
        .par_iter()
        .map(|&(t, alpha)| {
            sharp_sum(table, t, alpha).map(|s| SweepRow {
                t,
                alpha,
                value: s.value,
            })
        })
        .collect::<Result<_>>()?;

    let mut envelope = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let best = rows
            .iter()
            .filter(|r| r.t == t)
            .max_by(|a, b| a.value.norm().total_cmp(&b.value.norm()))
            .expect("grid point evaluated");
        let refined = refine_maximum(table, t, best.alpha, best.value.norm())?;
        envelope.push((t, refined));
    }

    let pts: Vec<(f64, f64)> = envelope
        .iter()
        .map(|&(t, m)| (t.ln(), m.max(1e-300).ln()))
        .collect();
    let beta = least_squares_slope(&pts);
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let rms = (pts
        .iter()
        .map(|&(x, y)| {
            let fit = mean_y + beta * (x - mean_x);
            (y - fit) * (y - fit)
        })
        .sum::<f64>()
        / pts.len() as f64)
        .sqrt();

    Ok(ExponentFit {
        beta,
        rows,
        envelope,
        rms,
    })
}

/// Deterministic local search around a maximizer: three shrinking scales
/// of equispaced offsets, keeping the best value seen.
fn refine_maximum(
    table: &CoefficientTable,
    t: f64,
    alpha: f64,
    base: f64,
) -> Result<f64> {
    let mut best = base;
    let mut center = alpha;
    for scale in [1e-2, 1e-3, 1e-4] {
        let mut best_here = (center, best);
        for k in -4_i32..=4 {
            let a = center + scale * k as f64;
            let v = sharp_sum(table, t, a)?.value.norm();
            if v > best_here.1 {
                best_here = (a, v);
            }
        }
        center = best_here.0;
        best = best_here.1;
    }
    Ok(best)
}

/// A coefficient row of all ones: the divisor-free control input whose
/// twisted sums are geometric series, pinning the fitter at slope 1. The
/// descriptor is a label only.
pub fn ones_table(n_max: usize) -> CoefficientTable {
    CoefficientTable::new(FormDescriptor::d3(), vec![1.0; n_max + 1])
        .expect("constant row is a valid table")
}

/// Writes sweep rows as CSV with header T,alpha,re,im,abs.
pub fn write_sweep_csv(path: impl AsRef<Path>, rows: &[SweepRow]) -> Result<()> {
    let mut out = String::from("T,alpha,re,im,abs\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.t,
            r.alpha,
            r.value.re,
            r.value.im,
            r.value.norm()
        ));
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(out.as_bytes())?;
    Ok(())
}
