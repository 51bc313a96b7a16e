//! Symmetric-square lift of the weight-12 form to a degree-3 family.

use super::tau::gl2_normalized;
use crate::error::Result;

/// First-row coefficients a_{1,n} of the symmetric-square lift for
/// n <= n_max; index n holds a_{1,n}, slot 0 is unused.
///
/// At a prime p the value is lambda(p)^2 - 1; prime powers follow the
/// degree-3 Euler factor with Satake multiset {alpha^2, 1, alpha^-2} where
/// alpha + 1/alpha = lambda(p); composites split multiplicatively.
pub fn sym2_coefficients(n_max: usize) -> Result<Vec<f64>> {
    let lambda = gl2_normalized(n_max)?;
    Ok(sym2_from_gl2(&lambda))
}

/// Multiplicative extension from the GL(2) eigenvalue row (index p holds
/// lambda(p); only prime slots are read).
pub(crate) fn sym2_from_gl2(lambda: &[f64]) -> Vec<f64> {
    let n_max = lambda.len() - 1;
    let spf = smallest_prime_factor(n_max);
    let mut a = vec![0.0; n_max + 1];
    if n_max >= 1 {
        a[1] = 1.0;
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut e = 0u32;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if m == 1 {
            a[n] = prime_power(lambda[p], e);
        } else {
            a[n] = a[m] * a[n / m];
        }
    }
    a
}

/// a_{1,p^e} from the Euler-factor recursion
/// h_j = (lambda^2 - 1)(h_{j-1} - h_{j-2}) + h_{j-3}, h_0 = 1.
fn prime_power(lambda: f64, e: u32) -> f64 {
    let t = lambda * lambda - 1.0;
    let (mut h3, mut h2, mut h1) = (0.0, 0.0, 1.0);
    let mut h = 1.0;
    for _ in 0..e {
        h = t * (h1 - h2) + h3;
        h3 = h2;
        h2 = h1;
        h1 = h;
    }
    h
}

fn smallest_prime_factor(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            for j in (i..=n_max).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}
