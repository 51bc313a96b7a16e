//! Uniform-grid tables with four-point cubic interpolation.

use num_complex::Complex64;

pub(crate) struct UniformGrid {
    pub x0: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl UniformGrid {
    /// Cubic Lagrange interpolation on the stencil surrounding x; the
    /// stencil clamps at the ends, so querying the full covered range is
    /// safe.
    pub fn interp(&self, x: f64) -> f64 {
        let (base, u) = self.locate(x);
        let w = weights(u);
        (0..4).map(|j| w[j] * self.values[base + j]).sum()
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let n = self.values.len();
        assert!(n >= 4, "grid needs at least one stencil");
        let t = (x - self.x0) / self.step;
        let i = (t.floor() as isize).clamp(1, n as isize - 3) as usize;
        (i - 1, t - i as f64)
    }
}

pub(crate) struct UniformGridComplex {
    pub x0: f64,
    pub step: f64,
    pub values: Vec<Complex64>,
}

impl UniformGridComplex {
    pub fn interp(&self, x: f64) -> Complex64 {
        let n = self.values.len();
        assert!(n >= 4, "grid needs at least one stencil");
        let t = (x - self.x0) / self.step;
        let i = (t.floor() as isize).clamp(1, n as isize - 3) as usize;
        let u = t - i as f64;
        let w = weights(u);
        (0..4).map(|j| w[j] * self.values[i - 1 + j]).sum()
    }

    pub fn covers(&self, x: f64) -> bool {
        let last = self.x0 + self.step * (self.values.len() - 1) as f64;
        x >= self.x0 && x <= last
    }
}

/// Lagrange basis at offsets (-1, 0, 1, 2) evaluated at offset u in [0, 1].
fn weights(u: f64) -> [f64; 4] {
    [
        -u * (u - 1.0) * (u - 2.0) / 6.0,
        (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
        -(u + 1.0) * u * (u - 2.0) / 2.0,
        (u + 1.0) * u * (u - 1.0) / 6.0,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_cubics_exactly() {
        let f = |x: f64| 2.0 - x + 3.0 * x * x - 0.5 * x * x * x;
        let values: Vec<f64> = (0..50).map(|i| f(-1.0 + 0.1 * i as f64)).collect();
        let g = UniformGrid {
            x0: -1.0,
            step: 0.1,
            values,
        };
        for &x in &[-1.0, -0.97, 0.333, 1.5, 3.83, 3.9] {
            assert!((g.interp(x) - f(x)).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn smooth_function_error_scales_like_fourth_power() {
        let build = |step: f64| UniformGrid {
            x0: 0.0,
            step,
            values: (0..(4.0 / step) as usize + 1)
                .map(|i| (step * i as f64).sin())
                .collect(),
        };
        let coarse = build(0.1);
        let fine = build(0.05);
        let err = |g: &UniformGrid| {
            (0..100)
                .map(|i| {
                    let x = 0.7 + 0.017 * i as f64;
                    (g.interp(x) - x.sin()).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let (ec, ef) = (err(&coarse), err(&fine));
        assert!(ef < ec / 8.0, "coarse {ec:.2e}, fine {ef:.2e}");
    }
}
