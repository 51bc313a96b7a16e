use num_complex::Complex64;

use super::{log_gamma, POLE_EPS};
use crate::error::{Error, Result};
use crate::parity::Parity;

const PI: f64 = std::f64::consts::PI;
const LN_2: f64 = std::f64::consts::LN_2;
const LN_PI: f64 = 1.1447298858494002;
const LN_2PI: f64 = 1.8378770664093453;

// Radius around the removable lattice points inside which the reflected
// form is used; Gamma pole and trig zero would otherwise have to cancel
// numerically.
const REMOVABLE_RADIUS: f64 = 0.1;

fn i_times(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

/// The Mellin factor of the signed Fourier kernel:
/// `2 (2pi)^{-s} Gamma(s) cos(pi s / 2)` for even parity,
/// `2i (2pi)^{-s} Gamma(s) sin(pi s / 2)` for odd.
///
/// Poles sit on the nonpositive integers of parity `delta` (rejected inside
/// a small guard radius); the opposite-parity nonpositive integers are
/// removable and evaluated by a reflected formula; positive integers of
/// parity `1 - delta` give an exact zero.
pub fn g_delta(delta: Parity, s: Complex64) -> Result<Complex64> {
    if is_exact_zero(delta, s) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(g_delta_ln(delta, s)?.exp())
}

/// Logarithm of [`g_delta`], on a branch consistent under exponentiation
/// (the imaginary part is not reduced to a principal range). Errors at the
/// exact zeros, where no logarithm exists.
pub fn g_delta_ln(delta: Parity, s: Complex64) -> Result<Complex64> {
    if is_exact_zero(delta, s) {
        return Err(Error::Domain(format!(
            "G_{delta} is exactly zero at s = {s}; its logarithm is undefined"
        )));
    }
    let n0 = s.re.round();
    if n0 <= 0.0 {
        let dist = (s - n0).norm();
        let own_parity = (n0 as i64).rem_euclid(2) as u8 == delta.index();
        if own_parity {
            if dist < POLE_EPS {
                return Err(Error::PoleProximity {
                    re: s.re,
                    im: s.im,
                    dist,
                });
            }
        } else if dist < REMOVABLE_RADIUS {
            // Reflecting Gamma(s) = pi / (sin(pi s) Gamma(1-s)) and
            // cancelling half of sin(pi s) = 2 sin(pi s/2) cos(pi s/2)
            // against the kernel's own factor leaves the *other* half
            // angle trig, which is near +-1 here. Uniformly stable.
            let ln = match delta {
                Parity::Even => {
                    LN_PI - s * LN_2PI - ln_sin_half(s) - log_gamma(1.0 - s)?
                }
                Parity::Odd => {
                    i_times(0.5 * PI) + LN_PI
                        - s * LN_2PI
                        - ln_cos_half(s)
                        - log_gamma(1.0 - s)?
                }
            };
            return Ok(ln);
        }
    }
    let ln = match delta {
        Parity::Even => LN_2 - s * LN_2PI + log_gamma(s)? + ln_cos_half(s),
        Parity::Odd => {
            Complex64::new(LN_2, 0.5 * PI) - s * LN_2PI + log_gamma(s)? + ln_sin_half(s)
        }
    };
    Ok(ln)
}

fn is_exact_zero(delta: Parity, s: Complex64) -> bool {
    s.im == 0.0
        && s.re > 0.0
        && s.re == s.re.round()
        && (s.re as i64).rem_euclid(2) as u8 != delta.index()
}

/// log sin(pi z / 2), stable at all heights. Argument reduction by the
/// nearest integer keeps full accuracy near the zeros; for |Im z| > 6 the
/// dominant exponential is factored out so nothing overflows. The branch is
/// only exp-consistent.
fn ln_sin_half(z: Complex64) -> Complex64 {
    if z.im.abs() <= 6.0 {
        let n = z.re.round();
        let w = 0.5 * PI * (z - n);
        let v = match (n as i64).rem_euclid(4) {
            0 => w.sin(),
            1 => w.cos(),
            2 => -w.sin(),
            _ => -w.cos(),
        };
        v.ln()
    } else if z.im > 0.0 {
        // sin a = (i/2) e^{-ia} (1 - e^{2ia}) with a = pi z / 2
        let a = i_times(0.5 * PI) * z;
        -a + (1.0 - (2.0 * a).exp()).ln() + Complex64::new(-LN_2, 0.5 * PI)
    } else {
        let a = i_times(0.5 * PI) * z;
        a + (1.0 - (-2.0 * a).exp()).ln() + Complex64::new(-LN_2, -0.5 * PI)
    }
}

fn ln_cos_half(z: Complex64) -> Complex64 {
    ln_sin_half(z + 1.0)
}

/// |G_delta(sigma + it)| divided by its leading Stirling size
/// `(|t| / 2pi)^(sigma - 1/2)`; tends to 1 as |t| grows.
pub fn g_stirling_ratio(delta: Parity, sigma: f64, t: f64) -> Result<f64> {
    if t.abs() < 1.0 {
        return Err(Error::Domain(
            "Stirling ratio needs a height with |t| >= 1".into(),
        ));
    }
    let ln = g_delta_ln(delta, Complex64::new(sigma, t))?;
    Ok((ln.re - (sigma - 0.5) * (t.abs() / (2.0 * PI)).ln()).exp())
}

/// Relative defect `|lhs/rhs - 1|` in the Gauss multiplication formula
/// `prod_{j<n} Gamma(s + j/n) = (2pi)^{(n-1)/2} n^{1/2 - ns} Gamma(ns)`.
pub fn gamma_multiplication_residual(n: u32, s: Complex64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("multiplication order must be positive".into()));
    }
    let nf = f64::from(n);
    let mut lhs = Complex64::new(0.0, 0.0);
    for j in 0..n {
        lhs += log_gamma(s + f64::from(j) / nf)?;
    }
    let rhs = 0.5 * (nf - 1.0) * LN_2PI
        + (0.5 - nf * s) * nf.ln()
        + log_gamma(nf * s)?;
    Ok(((lhs - rhs).exp() - 1.0).norm())
}

/// Relative defect in the two-factor collapse available at the holomorphic
/// points `(0, -(k-1)/2 + it, (k-1)/2 + it)`: there
/// `G_eta(s + (k-1)/2 - it) G_{eta+1}(s - (k-1)/2 - it)` equals
/// `i^k (2pi)^{1-2u} Gamma(u + (k-1)/2) / Gamma(1 - u + (k-1)/2)` with
/// `u = s - it`, independently of `eta`.
pub fn g_pair_collapse(k: u32, t: f64, eta: Parity, s: Complex64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("weight must be positive".into()));
    }
    let a = 0.5 * (f64::from(k) - 1.0);
    let lam2 = Complex64::new(-a, t);
    let lam3 = Complex64::new(a, t);
    let lhs = g_delta_ln(eta, s - lam2)? + g_delta_ln(eta.flip(), s - lam3)?;
    let u = s - i_times(t);
    let rhs = i_times(0.5 * PI * f64::from(k)) + (1.0 - 2.0 * u) * LN_2PI
        + log_gamma(u + a)?
        - log_gamma(1.0 - u + a)?;
    Ok(((lhs - rhs).exp() - 1.0).norm())
}
