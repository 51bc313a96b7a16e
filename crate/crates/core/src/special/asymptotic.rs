use num_complex::Complex64;

use super::{g_delta, log_gamma};
use crate::error::{Error, Result};
use crate::parity::Parity;

const PI: f64 = std::f64::consts::PI;
const LN_2: f64 = std::f64::consts::LN_2;
const LN_2PI: f64 = 1.8378770664093453;

// Fitting heights: high enough that the neglected ladder tail is below the
// target coefficient accuracy, low enough that the j-th ladder column
// (~ (pi/t)^j) still rises above f64 noise for j up to 7.
const FIT_BASE_HEIGHT: f64 = 600.0;
const FIT_HEIGHT_RATIO: f64 = 1.25;
const MAX_ORDER: usize = 8;

/// A two-G-factor product collapsed onto a single ladder of G-factors,
/// `G_e1(s-mu1) G_e2(s-mu2) ~ sum_{g,j} C_{g,j} 2^{-2s} G_g(2s - shift - j)`,
/// valid on vertical strips with relative error O(|t|^{-order}).
#[derive(Debug, Clone)]
pub struct AsymptoticExpansion {
    /// number of ladder steps kept per channel
    pub order: usize,
    pub mu1: Complex64,
    pub mu2: Complex64,
    pub eps1: Parity,
    pub eps2: Parity,
    /// subtracted from `scale * s` in the collapsed argument: mu1 + mu2 + 1/2
    pub mean_shift: Complex64,
    /// base of the n^{-ns} prefactor; a pair collapses with n = 2
    pub scale: f64,
    /// constants[gamma][j] for gamma in {0, 1}, j < order
    pub constants: [Vec<Complex64>; 2],
}

impl AsymptoticExpansion {
    /// Argument of the leading collapsed factor, `2s - mu1 - mu2 - 1/2`.
    pub fn leading_argument(&self, s: Complex64) -> Complex64 {
        self.scale * s - self.mean_shift
    }

    /// Value of the truncated ladder. The individual G-factors overflow f64
    /// past |Im s| ~ 190; use [`Self::relative_deviation`] for diagnostics
    /// at greater heights.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let w0 = self.leading_argument(s);
        let pre = (-self.scale * s * LN_2).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (gi, row) in self.constants.iter().enumerate() {
            let gamma = Parity::from_index(gi as i64);
            for (j, cj) in row.iter().enumerate() {
                acc += cj * g_delta(gamma, w0 - j as f64)?;
            }
        }
        Ok(pre * acc)
    }

    /// `|ladder/product - 1|` at `s`. Both sides are scaled by the dominant
    /// exponential channel before comparing, so this stays finite at heights
    /// where the raw values overflow.
    pub fn relative_deviation(&self, s: Complex64) -> Result<f64> {
        // e(+osc/4) decays like e^{-pi t} for t > 0, so the "-" channel
        // dominates in the upper half-plane.
        let sign = if s.im >= 0.0 { -1.0 } else { 1.0 };
        let w0 = self.leading_argument(s);
        let ln_b0 = ln_basis0(sign, s, w0)?;

        // exact product: common Gamma part times the four bracket terms
        let ln_common = (self.mu1 + self.mu2 - 2.0 * s) * LN_2PI
            + log_gamma(s - self.mu1)?
            + log_gamma(s - self.mu2)?;
        let half = Complex64::new(0.0, 0.5 * PI);
        let spread = self.mu1 - self.mu2;
        let osc = 2.0 * s - self.mu1 - self.mu2;
        let mut exact = Complex64::new(0.0, 0.0);
        for (phase, par) in [
            (half * osc, 0),
            (-half * spread, self.eps2.index()),
            (half * spread, self.eps1.index()),
            (-half * osc, self.eps1.index() + self.eps2.index()),
        ] {
            let mut ln = ln_common + phase - ln_b0;
            if par % 2 == 1 {
                ln += Complex64::new(0.0, PI);
            }
            exact += ln.exp();
        }

        // ladder, channel-split against the same scale
        let alpha: Vec<Complex64> = (0..self.order)
            .map(|j| self.constants[0][j] + self.constants[1][j])
            .collect();
        let beta: Vec<Complex64> = (0..self.order)
            .map(|j| self.constants[0][j] - self.constants[1][j])
            .collect();
        let (dom, sub) = if sign < 0.0 {
            (&beta, &alpha)
        } else {
            (&alpha, &beta)
        };
        let damp = (Complex64::new(0.0, -sign * PI) * w0).exp();
        let base_dom = Complex64::new(0.0, -sign * 2.0 * PI);
        let mut pow_dom = Complex64::new(1.0, 0.0);
        let mut pow_sub = Complex64::new(1.0, 0.0);
        let mut denom = Complex64::new(1.0, 0.0);
        let mut approx = Complex64::new(0.0, 0.0);
        for j in 0..self.order {
            if j > 0 {
                pow_dom *= base_dom;
                pow_sub *= -base_dom;
                denom *= w0 - j as f64;
            }
            approx += (dom[j] * pow_dom + damp * sub[j] * pow_sub) / denom;
        }
        Ok((approx - exact).norm() / exact.norm())
    }
}

/// Fit the collapsed ladder for `G_eps1(s-mu1) G_eps2(s-mu2)` numerically:
/// each exponential channel `e(+-(2s-mu1-mu2)/4)` is matched against its own
/// closed form at `order` heights and the two channel solutions combine into
/// the parity constants C_{0,j}, C_{1,j}.
pub fn asymptotic_pair(
    mu1: Complex64,
    mu2: Complex64,
    eps1: Parity,
    eps2: Parity,
    order: usize,
) -> Result<AsymptoticExpansion> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::Domain(format!(
            "ladder order must lie in 1..={MAX_ORDER}, got {order}"
        )));
    }
    if mu1.im.abs() > 300.0 || mu2.im.abs() > 300.0 {
        return Err(Error::Domain(
            "spectral parameters exceed the fitted height range".into(),
        ));
    }
    let shift = mu1 + mu2 + 0.5;
    let mut channel = Vec::with_capacity(2);
    for sign in [1.0, -1.0] {
        let mut a = vec![vec![Complex64::new(0.0, 0.0); order]; order];
        let mut b = vec![Complex64::new(0.0, 0.0); order];
        for (k, row) in a.iter_mut().enumerate() {
            let t = FIT_BASE_HEIGHT * FIT_HEIGHT_RATIO.powi(k as i32);
            let s = Complex64::new(0.75, t);
            let w0 = 2.0 * s - shift;
            let mut ln_p = (mu1 + mu2 - 2.0 * s) * LN_2PI
                + log_gamma(s - mu1)?
                + log_gamma(s - mu2)?
                + Complex64::new(0.0, 0.5 * PI * sign) * (2.0 * s - mu1 - mu2);
            if sign < 0.0 && (eps1.index() + eps2.index()) % 2 == 1 {
                ln_p += Complex64::new(0.0, PI);
            }
            b[k] = (ln_p - ln_basis0(sign, s, w0)?).exp();
            let base = Complex64::new(0.0, -sign * 2.0 * PI);
            let mut pow = Complex64::new(1.0, 0.0);
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, slot) in row.iter_mut().enumerate() {
                if j > 0 {
                    pow *= base;
                    denom *= w0 - j as f64;
                }
                *slot = pow / denom;
            }
        }
        channel.push(solve_dense(a, b)?);
    }
    let (plus, minus) = (&channel[0], &channel[1]);
    let even = (0..order).map(|j| 0.5 * (plus[j] + minus[j])).collect();
    let odd = (0..order).map(|j| 0.5 * (plus[j] - minus[j])).collect();
    Ok(AsymptoticExpansion {
        order,
        mu1,
        mu2,
        eps1,
        eps2,
        mean_shift: shift,
        scale: 2.0,
        constants: [even, odd],
    })
}

/// ln of the channel's leading basis element 2^{-2s} (2pi)^{-w0} Gamma(w0)
/// e(sign * w0 / 4); the exponentially large parts of the channel closed
/// form cancel against this analytically, so the ratio is O(1).
fn ln_basis0(sign: f64, s: Complex64, w0: Complex64) -> Result<Complex64> {
    Ok(-2.0 * s * LN_2 - w0 * LN_2PI
        + log_gamma(w0)?
        + Complex64::new(0.0, 0.5 * PI * sign) * w0)
}

/// Gaussian elimination with partial pivoting on a column-scaled copy;
/// the ladder columns span many orders of magnitude by construction.
fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let m = b.len();
    let mut col_scale = vec![1.0f64; m];
    for (j, scale) in col_scale.iter_mut().enumerate() {
        let mx = (0..m).map(|k| a[k][j].norm()).fold(0.0f64, f64::max);
        if mx > 0.0 {
            *scale = mx;
            for row in a.iter_mut() {
                row[j] /= mx;
            }
        }
    }
    for col in 0..m {
        let (piv, mx) = (col..m)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if mx < 1e-250 {
            return Err(Error::Domain("ladder fit matrix is singular".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let lead = a[col].clone();
        let rhs = b[col];
        for r in col + 1..m {
            let f = a[r][col] / lead[col];
            for cc in col..m {
                a[r][cc] -= f * lead[cc];
            }
            b[r] -= f * rhs;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); m];
    for col in (0..m).rev() {
        let mut acc = b[col];
        for cc in col + 1..m {
            acc -= a[col][cc] * x[cc];
        }
        x[col] = acc / a[col][col];
    }
    for (xj, sc) in x.iter_mut().zip(col_scale.iter()) {
        *xj /= sc;
    }
    Ok(x)
}
