//! The compactly supported bump profile, its normalizations, and its
//! Fourier transform.
//!
//! The base profile is exp(-1/(1-x^2)) on (-1, 1), extended by zero. The
//! even profile divides by the total mass so the transform is 1 at the
//! origin; the odd profile multiplies by x and divides by the first
//! moment. Transform values come from a single long FFT of the sampled
//! profile, stored on a fine grid and interpolated; sampling at step
//! 1/4096 leaves Poisson aliasing images far below any tolerance used
//! here, so the table is accurate to roughly 1e-12 everywhere it is
//! defined.

use std::sync::OnceLock;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::UniformGrid;
use crate::error::{Error, Result};
use crate::parity::Parity;

/// Mass of the raw profile: the integral of exp(-1/(1-x^2)) over (-1, 1).
pub(crate) const EVEN_NORMALIZER: f64 = 0.443_993_816_168_079_437_8;

/// First moment of x * exp(-1/(1-x^2)), i.e. the integral of
/// x^2 exp(-1/(1-x^2)) over (-1, 1).
pub(crate) const ODD_NORMALIZER: f64 = 0.070_201_476_752_975_409_99;

/// Profile samples per unit length feeding the transform FFT.
const SAMPLE_RATE: usize = 4096;

/// Transform table resolution: grid step is 1/1024.
const HAT_RATE: usize = 1024;

/// Transform values are tabulated for |r| up to here; beyond, the true
/// magnitude is below 1e-100 and the table reports zero.
pub const HAT_R_MAX: f64 = 1200.0;

fn raw(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

/// Normalized bump profile of the requested parity. Even integrates to 1;
/// odd has first moment 1. Zero outside (-1, 1).
pub fn bump_profile(parity: Parity, x: f64) -> f64 {
    match parity {
        Parity::Even => raw(x) / EVEN_NORMALIZER,
        Parity::Odd => x * raw(x) / ODD_NORMALIZER,
    }
}

/// Derivative of `bump_profile`. Zero outside (-1, 1), including at the
/// endpoints where the profile is flat to all orders.
pub fn bump_profile_prime(parity: Parity, x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return 0.0;
    }
    let u = 1.0 - x * x;
    let logistic = -2.0 * x / (u * u);
    match parity {
        Parity::Even => logistic * raw(x) / EVEN_NORMALIZER,
        Parity::Odd => (1.0 + x * logistic) * raw(x) / ODD_NORMALIZER,
    }
}

/// Analytic extension of the on-support branch of the profile,
/// exp(-1/(1-z^2)) up to normalization. Valid anywhere away from the
/// essential singularities at z = +-1; it does NOT vanish off the real
/// support, so callers deforming integration paths must stay within the
/// region where their contour argument applies.
pub fn bump_profile_complex(parity: Parity, z: Complex64) -> Complex64 {
    let body = (-((1.0 - z * z).inv())).exp();
    match parity {
        Parity::Even => body / EVEN_NORMALIZER,
        Parity::Odd => z * body / ODD_NORMALIZER,
    }
}

/// d/dz of `bump_profile_complex`, same branch and caveats.
pub fn bump_profile_prime_complex(parity: Parity, z: Complex64) -> Complex64 {
    let u = 1.0 - z * z;
    let body = (-u.inv()).exp();
    let logistic = -2.0 * z / (u * u);
    match parity {
        Parity::Even => logistic * body / EVEN_NORMALIZER,
        Parity::Odd => (1.0 + z * logistic) * body / ODD_NORMALIZER,
    }
}

/// A translated and dilated copy of the bump profile:
/// eval(x) = bump_profile(parity, (x - shift) / scale), supported on
/// (shift - scale, shift + scale).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpSpec {
    pub parity: Parity,
    pub scale: f64,
    pub shift: f64,
}

impl BumpSpec {
    pub fn new(parity: Parity, scale: f64, shift: f64) -> Result<Self> {
        if !(scale > 0.0) || !shift.is_finite() {
            return Err(Error::Domain(format!(
                "bump scale must be positive and shift finite, got {scale}, {shift}"
            )));
        }
        Ok(BumpSpec {
            parity,
            scale,
            shift,
        })
    }

    pub fn centered(parity: Parity) -> Self {
        BumpSpec {
            parity,
            scale: 1.0,
            shift: 0.0,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.shift - self.scale, self.shift + self.scale)
    }

    pub fn eval(&self, x: f64) -> f64 {
        bump_profile(self.parity, (x - self.shift) / self.scale)
    }

    pub fn eval_prime(&self, x: f64) -> f64 {
        bump_profile_prime(self.parity, (x - self.shift) / self.scale) / self.scale
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        bump_profile_complex(self.parity, (z - self.shift) / self.scale)
    }

    /// Fourier transform of a centered even spec,
    /// hat(r) = scale * bump_hat(scale * r), real by symmetry. Shifted or
    /// odd specs have complex transforms and are rejected here.
    pub fn hat(&self, r: f64) -> Result<f64> {
        if self.shift != 0.0 || self.parity != Parity::Even {
            return Err(Error::Domain(format!(
                "real transform needs a centered even bump, got {} with shift {}",
                self.parity, self.shift
            )));
        }
        Ok(self.scale * bump_hat(self.scale * r))
    }
}

fn hat_table(parity: Parity) -> &'static UniformGrid {
    static EVEN: OnceLock<UniformGrid> = OnceLock::new();
    static ODD: OnceLock<UniformGrid> = OnceLock::new();
    match parity {
        Parity::Even => EVEN.get_or_init(|| build_hat_table(Parity::Even)),
        Parity::Odd => ODD.get_or_init(|| build_hat_table(Parity::Odd)),
    }
}

/// One forward FFT of the sampled profile. With x-step h = 1/SAMPLE_RATE
/// and length L = SAMPLE_RATE * HAT_RATE, bin k lands exactly on
/// r = k / HAT_RATE:
///   hat(k / HAT_RATE) = h * sum_m profile(m h) e(-k m / L).
/// The trapezoid sum of a compactly supported smooth function converges
/// superalgebraically, and the discarded aliasing images sit at
/// |r| >= SAMPLE_RATE - HAT_R_MAX where the transform is vanishingly
/// small. Three mirrored entries are prepended so cubic interpolation
/// near r = 0 has a full stencil.
fn build_hat_table(parity: Parity) -> UniformGrid {
    let len = SAMPLE_RATE * HAT_RATE;
    let h = 1.0 / SAMPLE_RATE as f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for m in 1..SAMPLE_RATE as i64 {
        let x = m as f64 * h;
        buf[m as usize].re = bump_profile(parity, x);
        buf[len - m as usize].re = bump_profile(parity, -x);
    }
    buf[0].re = bump_profile(parity, 0.0);
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);

    let stored = (HAT_R_MAX * HAT_RATE as f64) as usize + 1;
    let mut values = Vec::with_capacity(stored + 3);
    // Mirror entries for r < 0: the even-profile transform is even in r,
    // the odd-profile sine transform is odd.
    for k in (1..=3).rev() {
        let v = h * pick(parity, buf[k]);
        values.push(match parity {
            Parity::Even => v,
            Parity::Odd => -v,
        });
    }
    values.extend((0..stored).map(|k| h * pick(parity, buf[k])));
    UniformGrid {
        x0: -3.0 / HAT_RATE as f64,
        step: 1.0 / HAT_RATE as f64,
        values,
    }
}

/// The real content of one transform bin: the even-profile transform is
/// real, while the odd-profile transform is -i times a real sine
/// integral whose value sits in the negated imaginary part.
fn pick(parity: Parity, bin: Complex64) -> f64 {
    match parity {
        Parity::Even => bin.re,
        Parity::Odd => -bin.im,
    }
}

/// Fourier transform of the even profile,
/// bump_hat(r) = integral of bump_profile(even, x) e(-r x) dx,
/// which is real, even in r, and normalized to bump_hat(0) = 1. Reports
/// 0 beyond |r| = HAT_R_MAX.
pub fn bump_hat(r: f64) -> f64 {
    let a = r.abs();
    if a > HAT_R_MAX {
        return 0.0;
    }
    hat_table(Parity::Even).interp(a)
}

/// Sine transform of the odd profile,
/// bump_hat_sine(r) = integral of bump_profile(odd, x) sin(2 pi r x) dx,
/// so the full transform of the odd profile is -i times this. Odd in r;
/// the slope at the origin is 2 pi by the moment normalization. Reports
/// 0 beyond |r| = HAT_R_MAX.
pub fn bump_hat_sine(r: f64) -> f64 {
    let a = r.abs();
    if a > HAT_R_MAX {
        return 0.0;
    }
    let v = hat_table(Parity::Odd).interp(a);
    if r < 0.0 {
        -v
    } else {
        v
    }
}

/// Direct adaptive-trapezoid evaluation of the same transforms; the slow
/// oracle the tables are checked against.
pub(crate) fn bump_hat_quadrature(parity: Parity, r: f64) -> f64 {
    let integrand = |x: f64| match parity {
        Parity::Even => bump_profile(Parity::Even, x) * (std::f64::consts::TAU * r * x).cos(),
        Parity::Odd => bump_profile(Parity::Odd, x) * (std::f64::consts::TAU * r * x).sin(),
    };
    let trap = |n: usize| {
        let h = 2.0 / n as f64;
        h * (1..n).map(|m| integrand(-1.0 + m as f64 * h)).sum::<f64>()
    };
    let mut n = 4096.max(16 * (r.abs() as usize + 1));
    let mut prev = trap(n);
    loop {
        n *= 2;
        let next = trap(n);
        if (next - prev).abs() <= 1e-14 * (1.0 + next.abs()) || n >= 1 << 21 {
            return next;
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::least_squares_slope;

    #[test]
    fn normalizers_match_quadrature() {
        let trap = |f: &dyn Fn(f64) -> f64, n: usize| {
            let h = 2.0 / n as f64;
            h * (1..n).map(|m| f(-1.0 + m as f64 * h)).sum::<f64>()
        };
        let mass = trap(&|x| raw(x), 1 << 16);
        let moment = trap(&|x| x * x * raw(x), 1 << 16);
        assert!((mass - EVEN_NORMALIZER).abs() < 1e-14);
        assert!((moment - ODD_NORMALIZER).abs() < 1e-14);
        assert!((trap(&|x| bump_profile(Parity::Even, x), 1 << 16) - 1.0).abs() < 1e-13);
        assert!((trap(&|x| x * bump_profile(Parity::Odd, x), 1 << 16) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn transform_pins() {
        // Reference values computed once in 40-digit arithmetic.
        let pins = [
            (0.25, 0.81790429174122716627),
            (0.5, 0.40654821872618195315),
            (0.75, 0.043441235638797178612),
            (1.0, -0.096527332870191751152),
            (1.5, 0.020410421396943517384),
            (2.0, 0.00065499646506439340992),
            (3.0, 0.0056886781300056700542),
            (5.0, 0.0012907492433648210182),
            (10.0, -0.000081894783892261048264),
        ];
        for (r, want) in pins {
            let got = bump_hat(r);
            assert!((got - want).abs() < 1e-9, "r = {r}: {got} vs {want}");
        }
        assert!((bump_hat(0.0) - 1.0).abs() < 1e-12);
        assert_eq!(bump_hat(HAT_R_MAX + 1.0), 0.0);
    }

    #[test]
    fn table_matches_quadrature_off_grid() {
        for &r in &[0.0003, 0.31459, 1.77245, 23.6181, 154.213] {
            for parity in [Parity::Even, Parity::Odd] {
                let oracle = bump_hat_quadrature(parity, r);
                let table = match parity {
                    Parity::Even => bump_hat(r),
                    Parity::Odd => bump_hat_sine(r),
                };
                assert!(
                    (table - oracle).abs() < 1e-9,
                    "{parity} r = {r}: {table} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn transform_symmetries_and_origin_slope() {
        assert_eq!(bump_hat(-2.3), bump_hat(2.3));
        assert_eq!(bump_hat_sine(-2.3), -bump_hat_sine(2.3));
        // Moment normalization of the odd profile forces slope 2 pi at 0.
        let r = 1e-4;
        let slope = bump_hat_sine(r) / r;
        assert!((slope - std::f64::consts::TAU).abs() < 1e-4, "{slope}");
    }

    #[test]
    fn zeros_sit_where_expected() {
        let bisect = |mut lo: f64, mut hi: f64| {
            assert!(bump_hat(lo) * bump_hat(hi) < 0.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if bump_hat(lo) * bump_hat(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let first = bisect(0.7, 0.9);
        assert!((0.77..0.81).contains(&first), "{first}");
        let second = bisect(1.40, 1.43);
        assert!((second - 1.4146445291142852).abs() < 1e-6, "{second}");
    }

    #[test]
    fn transform_decays_faster_than_sixth_power() {
        // Envelope of |hat| over short windows, fit in log-log scale; the
        // slope must beat -6 on r in [10, 100].
        let mut pts = Vec::new();
        let mut r0 = 10.0;
        while r0 < 100.0 {
            let peak = (0..=100)
                .map(|i| bump_hat(r0 + 0.05 * i as f64).abs())
                .fold(0.0f64, f64::max);
            pts.push(((r0 + 2.5).ln(), peak.ln()));
            r0 += 5.0;
        }
        let slope = least_squares_slope(&pts);
        assert!(slope < -6.0, "log-log envelope slope {slope}");
    }

    #[test]
    fn profiles_have_stated_support_and_parity() {
        for parity in [Parity::Even, Parity::Odd] {
            assert_eq!(bump_profile(parity, 1.0), 0.0);
            assert_eq!(bump_profile(parity, -1.2), 0.0);
            assert_eq!(bump_profile_prime(parity, 1.0), 0.0);
        }
        for &x in &[0.1, 0.45, 0.99] {
            assert_eq!(bump_profile(Parity::Even, -x), bump_profile(Parity::Even, x));
            assert_eq!(bump_profile(Parity::Odd, -x), -bump_profile(Parity::Odd, x));
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for parity in [Parity::Even, Parity::Odd] {
            for &x in &[0.05, 0.3, -0.7] {
                let fd = (bump_profile(parity, x + h) - bump_profile(parity, x - h)) / (2.0 * h);
                let exact = bump_profile_prime(parity, x);
                assert!((fd - exact).abs() < 1e-7 * (1.0 + exact.abs()), "{parity} {x}");
            }
        }
    }

    #[test]
    fn complex_branch_agrees_on_the_real_support() {
        for parity in [Parity::Even, Parity::Odd] {
            for &x in &[0.02, -0.61, 0.93] {
                let z = Complex64::new(x, 0.0);
                let v = bump_profile_complex(parity, z);
                assert!((v.re - bump_profile(parity, x)).abs() < 1e-15);
                assert!(v.im.abs() < 1e-18);
                let d = bump_profile_prime_complex(parity, z);
                assert!((d.re - bump_profile_prime(parity, x)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn bump_spec_applies_scale_and_shift() {
        let spec = BumpSpec::new(Parity::Even, 0.5, 2.0).unwrap();
        assert_eq!(spec.support(), (1.5, 2.5));
        assert_eq!(spec.eval(2.0), bump_profile(Parity::Even, 0.0));
        let diff = spec.eval(2.2) - bump_profile(Parity::Even, 0.4);
        assert!(diff.abs() < 1e-14);
        assert_eq!(spec.eval(1.5), 0.0);
        let h = 1e-6;
        let fd = (spec.eval(2.2 + h) - spec.eval(2.2 - h)) / (2.0 * h);
        assert!((fd - spec.eval_prime(2.2)).abs() < 1e-6);
        assert!(BumpSpec::new(Parity::Even, 0.0, 0.0).is_err());
        assert!(BumpSpec::new(Parity::Even, -1.0, 0.0).is_err());
    }

    #[test]
    fn spec_transform_rescales_the_table() {
        let spec = BumpSpec::new(Parity::Even, 0.5, 0.0).unwrap();
        assert!((spec.hat(0.0).unwrap() - 0.5).abs() < 1e-12);
        let direct = 0.5 * bump_hat(0.5);
        assert!((spec.hat(1.0).unwrap() - direct).abs() < 1e-14);
        assert!(BumpSpec::new(Parity::Even, 1.0, 0.3).unwrap().hat(1.0).is_err());
        assert!(BumpSpec::centered(Parity::Odd).hat(1.0).is_err());
    }
}
