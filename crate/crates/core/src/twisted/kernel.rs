//! The periodic Dirichlet-style kernel with a smooth reciprocal weight,
//! and the convolution that turns smoothed twisted sums back into sharp
//! ones.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::sums::unit_phase;
use crate::error::{Error, Result};
use crate::mellin::BumpSpec;

/// A one-sided trigonometric kernel D(x) = sum_{1<=n<=N} g(n/N) e(nx),
/// a trigonometric polynomial of degree N.
pub struct KernelSpec<G: Fn(f64) -> f64> {
    pub g: G,
    pub n: usize,
}

/// Direct evaluation of the kernel at x.
pub fn dirichlet_kernel<G: Fn(f64) -> f64>(spec: &KernelSpec<G>, x: f64) -> Complex64 {
    (1..=spec.n)
        .map(|m| (spec.g)(m as f64 / spec.n as f64) * unit_phase(m as u64, x))
        .sum()
}

/// L^1 norm of the kernel over R/Z, by equispaced quadrature at 16N
/// nodes; the kernel values come from one length-16N inverse FFT of the
/// weight sequence.
pub fn kernel_l1_norm<G: Fn(f64) -> f64>(spec: &KernelSpec<G>) -> f64 {
    let len = 16 * spec.n;
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for m in 1..=spec.n {
        buf[m].re = (spec.g)(m as f64 / spec.n as f64);
    }
    FftPlanner::new().plan_fft_inverse(len).process(&mut buf);
    buf.iter().map(|v| v.norm()).sum::<f64>() / len as f64
}

/// The weight that the sharpening convolution divides out: the Fourier
/// transform of `phi0` on [0, 1]. Returns the minimum of |W| found by a
/// sign-change-aware scan along with the evaluator.
fn checked_weight(phi0: &BumpSpec) -> Result<(impl Fn(f64) -> f64 + '_, f64)> {
    let weight = move |u: f64| phi0.hat(u).expect("validated centered even bump");
    phi0.hat(0.0)?;
    let mut min = f64::INFINITY;
    let mut prev = weight(0.0);
    for j in 0..=1024 {
        let w = weight(j as f64 / 1024.0);
        min = min.min(w.abs());
        if w * prev <= 0.0 && (w != 0.0 || prev != 0.0) {
            min = 0.0;
        }
        prev = w;
    }
    if min < 1e-6 {
        return Err(Error::KernelSingularity { min });
    }
    Ok((weight, min))
}

/// Recovers the sharp sum over n <= N from a smoothed evaluator by
/// convolving against the reciprocal-weight kernel over R/Z.
///
/// Contract on the evaluator: it must be a trigonometric polynomial of
/// degree at most N in the twist whose coefficient at each positive
/// frequency n <= N is a_n * W(n/N), with W the transform of `phi0`;
/// `smoothed_sum` with weight phi(u) = W(u) cut to |u| <= 1 produces
/// exactly that. Negative-frequency content is annihilated by the
/// one-sided kernel. The convolution is quadrature at 4N+1 equispaced
/// nodes, exact because the integrand's frequencies span (1-N, 2N].
pub fn sharpen_by_convolution(
    evaluator: impl Fn(f64) -> Result<Complex64>,
    phi0: &BumpSpec,
    n: usize,
    alpha: f64,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("sharpening needs a positive degree".into()));
    }
    let (weight, _) = checked_weight(phi0)?;
    let spec = KernelSpec {
        g: |u: f64| 1.0 / weight(u),
        n,
    };
    let nodes = 4 * n + 1;
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let x = j as f64 / nodes as f64;
        total += evaluator(alpha - x)? * dirichlet_kernel(&spec, x);
    }
    Ok(total / nodes as f64)
}

/// The default sharpening bump: the even profile squeezed to support
/// (-1/2, 1/2), whose transform stays well away from zero on [0, 1].
pub fn default_sharpening_bump() -> BumpSpec {
    BumpSpec {
        parity: crate::Parity::Even,
        scale: 0.5,
        shift: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{gl2_table, sym2_table, CoefficientTable, FormDescriptor};
    use crate::twisted::sums::{sharp_sum, smoothed_sum};

    fn cut_weight(phi0: &BumpSpec) -> impl Fn(f64) -> f64 + '_ {
        move |u: f64| {
            if u > 0.0 && u <= 1.0 {
                phi0.hat(u).unwrap()
            } else {
                0.0
            }
        }
    }

    #[test]
    fn single_exponential_has_unit_l1_norm() {
        let spec = KernelSpec { g: |_| 1.0, n: 1 };
        assert!((kernel_l1_norm(&spec) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_at_zero_sums_the_weights() {
        let phi0 = default_sharpening_bump();
        let n = 32;
        let spec = KernelSpec {
            g: |u: f64| 1.0 / phi0.hat(u).unwrap(),
            n,
        };
        let direct: f64 = (1..=n).map(|m| 1.0 / phi0.hat(m as f64 / n as f64).unwrap()).sum();
        let at_zero = dirichlet_kernel(&spec, 0.0);
        assert!((at_zero.re - direct).abs() < 1e-10 * direct);
        assert!(at_zero.im.abs() < 1e-10);
    }

    #[test]
    fn fft_norm_matches_direct_quadrature_at_small_degree() {
        let spec = KernelSpec {
            g: |u: f64| 1.0 + 0.5 * u,
            n: 8,
        };
        let len = 16 * spec.n;
        let direct: f64 = (0..len)
            .map(|j| dirichlet_kernel(&spec, j as f64 / len as f64).norm())
            .sum::<f64>()
            / len as f64;
        assert!((kernel_l1_norm(&spec) - direct).abs() < 1e-10 * direct);
    }

    #[test]
    fn reciprocal_weight_norm_grows_like_log() {
        let phi0 = default_sharpening_bump();
        let mut ratios = Vec::new();
        let mut n = 64;
        while n <= 8192 {
            let spec = KernelSpec {
                g: |u: f64| 1.0 / phi0.hat(u).unwrap(),
                n,
            };
            let ratio = kernel_l1_norm(&spec) / (n as f64).ln();
            assert!(ratio < 20.0, "N = {n}: ratio {ratio}");
            ratios.push((n, ratio));
            n *= 2;
        }
        println!("L1 norm over log N trend: {ratios:?}");
    }

    #[test]
    fn sharpening_reproduces_the_sharp_sum() {
        let table = gl2_table(64).unwrap();
        let phi0 = default_sharpening_bump();
        let phi = cut_weight(&phi0);
        let n = 64;
        let evaluator = |x: f64| smoothed_sum(&table, n as f64, x, &phi, 1e-9).map(|r| r.value);
        let via = sharpen_by_convolution(evaluator, &phi0, n, 0.3).unwrap();
        let sharp = sharp_sum(&table, n as f64, 0.3).unwrap().value;
        assert!(
            (via - sharp).norm() <= 1e-8 * sharp.norm(),
            "{via} vs {sharp}"
        );
    }

    #[test]
    fn sharpening_holds_across_degrees_and_twists() {
        let phi0 = default_sharpening_bump();
        for n in [64_usize, 256] {
            let table = sym2_table(n).unwrap();
            let phi = cut_weight(&phi0);
            for alpha in [0.0, 0.1237, 1.0 / 3.0, 0.618_033_988_749_894_9, 0.909] {
                let evaluator =
                    |x: f64| smoothed_sum(&table, n as f64, x, &phi, 1e-9).map(|r| r.value);
                let via = sharpen_by_convolution(evaluator, &phi0, n, alpha).unwrap();
                let sharp = sharp_sum(&table, n as f64, alpha).unwrap().value;
                assert!(
                    (via - sharp).norm() <= 1e-8 * (1.0 + sharp.norm()),
                    "N = {n}, alpha = {alpha}: {via} vs {sharp}"
                );
            }
        }
    }

    #[test]
    fn single_frequency_table_recovers_a_pure_phase() {
        let mut row = vec![0.0; 65];
        row[1] = 1.0;
        let table = CoefficientTable::new(FormDescriptor::gl2(), row).unwrap();
        let phi0 = default_sharpening_bump();
        let phi = cut_weight(&phi0);
        let n = 64;
        let alpha = 0.271_828;
        let evaluator = |x: f64| smoothed_sum(&table, n as f64, x, &phi, 1e-9).map(|r| r.value);
        let via = sharpen_by_convolution(evaluator, &phi0, n, alpha).unwrap();
        // The weight on frequency 1 cancels against the kernel exactly,
        // leaving e(alpha) itself.
        let want = unit_phase(1, alpha);
        assert!((via - want).norm() < 1e-12);
    }

    #[test]
    fn sharpening_is_linear_in_the_table() {
        let a = gl2_table(64).unwrap();
        let b = sym2_table(64).unwrap();
        let mid_row: Vec<f64> = a
            .first_row()
            .iter()
            .zip(b.first_row())
            .map(|(x, y)| 0.5 * (x + y))
            .collect();
        let mid = CoefficientTable::new(FormDescriptor::gl2(), mid_row).unwrap();
        let phi0 = default_sharpening_bump();
        let phi = cut_weight(&phi0);
        let alpha = 0.43;
        let run = |table: &CoefficientTable| {
            let evaluator =
                |x: f64| smoothed_sum(table, 64.0, x, &phi, 1e-9).map(|r| r.value);
            sharpen_by_convolution(evaluator, &phi0, 64, alpha).unwrap()
        };
        let (va, vb, vm) = (run(&a), run(&b), run(&mid));
        assert!((vm - 0.5 * (va + vb)).norm() < 1e-10 * (1.0 + va.norm() + vb.norm()));
    }

    #[test]
    fn vanishing_weights_are_rejected() {
        // Doubling the support pushes the first transform zero inside
        // [0, 1], where the scan sees a sign change.
        let wide = BumpSpec {
            parity: crate::Parity::Even,
            scale: 2.0,
            shift: 0.0,
        };
        let evaluator = |_x: f64| Ok(Complex64::new(0.0, 0.0));
        match sharpen_by_convolution(evaluator, &wide, 16, 0.0) {
            Err(Error::KernelSingularity { min }) => assert_eq!(min, 0.0),
            other => panic!("expected kernel singularity, got {other:?}"),
        }
    }
}
