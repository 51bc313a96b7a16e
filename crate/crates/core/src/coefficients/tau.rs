//! Ramanujan tau from the weight-12 eta product.
//!
//! The discriminant form is q * J(q)^8 where J(q) = prod (1-q^n)^3 has the
//! sparse Jacobi expansion sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}, so tau(n)
//! is the coefficient of q^{n-1} in eight sparse factors multiplied out in
//! O(N sqrt N) integer operations.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::COEFFICIENT_CAP;
use crate::error::{Error, Result};

/// Exact tau(1..=n_max); index n holds tau(n), slot 0 is unused.
///
/// Arithmetic is exact at every size. Each multiplication pass runs in i128
/// when a rigorous magnitude bound certifies it, falls back to checked i128,
/// and only re-runs in arbitrary precision if a checked operation actually
/// overflows (tau itself outgrows i128 near the length cap).
pub fn ramanujan_tau(n_max: usize) -> Result<Vec<BigInt>> {
    if n_max == 0 || n_max > COEFFICIENT_CAP {
        return Err(Error::Domain(format!(
            "table length {n_max} outside 1..={COEFFICIENT_CAP}"
        )));
    }
    let sparse = jacobi_terms(n_max);
    let mut seed = vec![0i128; n_max];
    for &(e, c) in &sparse {
        seed[e] = c;
    }
    let mut acc = Dense::Small(seed);
    for _ in 0..7 {
        acc = acc.multiply(&sparse);
    }
    let coeffs = match acc {
        Dense::Small(v) => v.into_iter().map(BigInt::from).collect::<Vec<_>>(),
        Dense::Big(v) => v,
    };
    let mut tau = Vec::with_capacity(n_max + 1);
    tau.push(BigInt::from(0));
    tau.extend(coeffs);
    Ok(tau)
}

/// First-row GL(2) coefficients a_n = tau(n) n^{-11/2}; index n holds a_n,
/// slot 0 is unused.
pub fn gl2_normalized(n_max: usize) -> Result<Vec<f64>> {
    let tau = ramanujan_tau(n_max)?;
    Ok(normalize_tau(&tau))
}

pub(crate) fn normalize_tau(tau: &[BigInt]) -> Vec<f64> {
    let mut a = vec![0.0; tau.len()];
    for n in 1..tau.len() {
        let t = tau[n].to_f64().expect("finite tau");
        a[n] = t * (n as f64).powf(-5.5);
    }
    a
}

/// (exponent, coefficient) pairs of J(q) below the truncation order.
fn jacobi_terms(order: usize) -> Vec<(usize, i128)> {
    let mut terms = Vec::new();
    let mut k = 0usize;
    loop {
        let e = k * (k + 1) / 2;
        if e >= order {
            break;
        }
        let c = (2 * k + 1) as i128;
        terms.push((e, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    terms
}

enum Dense {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Dense {
    fn multiply(self, sparse: &[(usize, i128)]) -> Dense {
        match self {
            Dense::Small(v) => {
                // max |dense| * sum |c| bounds every partial sum in the pass,
                // so when it fits the unchecked loop cannot wrap.
                let max_d = v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
                let sum_c: u128 = sparse.iter().map(|&(_, c)| c.unsigned_abs()).sum();
                let certified = max_d
                    .checked_mul(sum_c)
                    .is_some_and(|b| b < i128::MAX as u128 / 2);
                if certified {
                    Dense::Small(multiply_unchecked(&v, sparse))
                } else {
                    match multiply_checked(&v, sparse) {
                        Some(out) => Dense::Small(out),
                        None => Dense::Big(multiply_big(&promote(&v), sparse)),
                    }
                }
            }
            Dense::Big(v) => Dense::Big(multiply_big(&v, sparse)),
        }
    }
}

fn multiply_unchecked(dense: &[i128], sparse: &[(usize, i128)]) -> Vec<i128> {
    let len = dense.len();
    let mut out = vec![0i128; len];
    for &(e, c) in sparse {
        for i in 0..len - e {
            out[i + e] += dense[i] * c;
        }
    }
    out
}

fn multiply_checked(dense: &[i128], sparse: &[(usize, i128)]) -> Option<Vec<i128>> {
    let len = dense.len();
    let mut out = vec![0i128; len];
    for &(e, c) in sparse {
        for i in 0..len - e {
            out[i + e] = dense[i].checked_mul(c)?.checked_add(out[i + e])?;
        }
    }
    Some(out)
}

fn multiply_big(dense: &[BigInt], sparse: &[(usize, i128)]) -> Vec<BigInt> {
    let len = dense.len();
    let mut out = vec![BigInt::from(0); len];
    for &(e, c) in sparse {
        for i in 0..len - e {
            out[i + e] += &dense[i] * c;
        }
    }
    out
}

fn promote(dense: &[i128]) -> Vec<BigInt> {
    dense.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// prod_{m < n_max} (1-q^m)^24 truncated below q^{n_max}, shifted by one:
    /// direct in-place polynomial multiplication, nothing shared with the
    /// Jacobi route.
    fn tau_by_q_expansion(n_max: usize) -> Vec<i128> {
        let mut poly = vec![0i128; n_max];
        poly[0] = 1;
        for m in 1..n_max {
            for _ in 0..24 {
                for i in (m..n_max).rev() {
                    poly[i] -= poly[i - m];
                }
            }
        }
        let mut tau = vec![0i128; n_max + 1];
        for n in 1..=n_max {
            tau[n] = poly[n - 1];
        }
        tau
    }

    #[test]
    fn pins_and_q_expansion_oracle() {
        let tau = ramanujan_tau(50).unwrap();
        assert_eq!(tau[1], BigInt::from(1));
        assert_eq!(tau[2], BigInt::from(-24));
        assert_eq!(tau[3], BigInt::from(252));
        let oracle = tau_by_q_expansion(50);
        for n in 1..=50 {
            assert_eq!(tau[n], BigInt::from(oracle[n]), "tau({n})");
        }
    }

    #[test]
    fn hecke_relations() {
        let tau = ramanujan_tau(1000).unwrap();
        assert_eq!(tau[6], &tau[2] * &tau[3]);
        assert_eq!(tau[6], BigInt::from(-6048));
        for (m, n) in [(2, 3), (3, 4), (4, 5), (5, 6), (8, 9), (25, 27), (7, 99)] {
            assert_eq!(tau[m * n], &tau[m] * &tau[n], "tau({m}*{n})");
        }
        for p in [2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let pw = BigInt::from(p).pow(11);
            assert_eq!(tau[p * p], &tau[p] * &tau[p] - pw, "tau({p}^2)");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(ramanujan_tau(COEFFICIENT_CAP + 1).is_err());
        assert!(ramanujan_tau(0).is_err());
    }

    #[test]
    fn all_multiplication_tiers_agree() {
        let sparse = jacobi_terms(300);
        let mut seed = vec![0i128; 300];
        for &(e, c) in &sparse {
            seed[e] = c;
        }
        let mut small = seed.clone();
        let mut big = promote(&seed);
        for _ in 0..7 {
            let unchecked = multiply_unchecked(&small, &sparse);
            let checked = multiply_checked(&small, &sparse).expect("no overflow at 300");
            big = multiply_big(&big, &sparse);
            assert_eq!(unchecked, checked);
            for i in 0..300 {
                assert_eq!(big[i], BigInt::from(unchecked[i]), "index {i}");
            }
            small = unchecked;
        }
    }

    #[test]
    fn checked_tier_reports_overflow() {
        let sparse = vec![(0usize, i128::MAX / 2), (1usize, 3i128)];
        let dense = vec![i128::MAX / 2, 1];
        assert!(multiply_checked(&dense, &sparse).is_none());
    }

    #[test]
    fn normalization_pins() {
        let a = gl2_normalized(10_000).unwrap();
        assert_eq!(a[1], 1.0);
        let a2 = -24.0 / 2f64.powf(5.5);
        assert!((a[2] - a2).abs() < 1e-15, "a_2 = {}", a[2]);
        assert!((a[2] + 0.530_330_085_889_910_6).abs() < 1e-12);
        // Prime coefficients stay inside the closed unit-disc pair bound.
        let mut is_prime = vec![true; 10_001];
        is_prime[0] = false;
        is_prime[1] = false;
        for p in 2..=10_000usize {
            if is_prime[p] {
                for q in (p * p..=10_000).step_by(p) {
                    is_prime[q] = false;
                }
                assert!(a[p].abs() <= 2.0, "|a_{p}| = {}", a[p].abs());
            }
        }
    }
}
