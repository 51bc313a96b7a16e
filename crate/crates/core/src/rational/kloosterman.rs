use crate::error::{Error, Result};
use crate::rational::{gcd, mod_inverse};

// Moduli the experiments actually need are q_k * c / d <= a few hundred;
// this cap only stops runaway requests.
pub const MODULUS_CAP: i64 = 10_000_000;

/// The unit pairs (x, x^-1) of (Z/c)*, precomputed once so that many sums
/// to the same modulus cost O(phi(c)) floating operations each.
#[derive(Debug, Clone)]
pub struct KloostermanKernel {
    c: i64,
    units: Vec<(i64, i64)>,
}

impl KloostermanKernel {
    pub fn new(c: i64) -> Result<Self> {
        if c < 1 {
            return Err(Error::Domain(format!("modulus must be >= 1, got {c}")));
        }
        if c > MODULUS_CAP {
            return Err(Error::Domain(format!(
                "modulus {c} exceeds the configured cap {MODULUS_CAP}"
            )));
        }
        let mut units = Vec::new();
        for x in 1..=c {
            if gcd(x, c) == 1 {
                let inv = if c == 1 { 0 } else { mod_inverse(x, c)? };
                units.push((x, inv));
            }
        }
        if c == 1 {
            // the sum over the trivial group is the single empty term
            units = vec![(0, 0)];
        }
        Ok(KloostermanKernel { c, units })
    }

    pub fn modulus(&self) -> i64 {
        self.c
    }

    /// S(n, m; c) = sum over units of e((n x + m x_inv)/c). The phase
    /// argument n x + m x_inv is reduced mod c in integer arithmetic before
    /// any float conversion, so large moduli lose no angular accuracy. The
    /// result is real by the x -> -x symmetry; the imaginary accumulation
    /// is checked against 1e-10 and discarded.
    pub fn eval(&self, n: i64, m: i64) -> Result<f64> {
        let c = self.c;
        if c == 1 {
            return Ok(1.0);
        }
        let step = std::f64::consts::TAU / c as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &(x, inv) in &self.units {
            let phase = (i128::from(n) * i128::from(x) + i128::from(m) * i128::from(inv))
                .rem_euclid(i128::from(c)) as i64;
            let (s, co) = (step * phase as f64).sin_cos();
            re += co;
            im += s;
        }
        if im.abs() > 1e-10 {
            return Err(Error::Domain(format!(
                "Kloosterman sum S({n},{m};{c}) accumulated imaginary part {im:e}"
            )));
        }
        Ok(re)
    }
}

/// One-off Kloosterman sum; see [`KloostermanKernel::eval`].
pub fn kloosterman(n: i64, m: i64, c: i64) -> Result<f64> {
    KloostermanKernel::new(c)?.eval(n, m)
}
