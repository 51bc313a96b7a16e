use crate::error::{Error, Result};

/// Nonnegative greatest common divisor.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Inverse of `a` modulo `c`, in `[0, c)`.
pub fn mod_inverse(a: i64, c: i64) -> Result<i64> {
    if c < 1 {
        return Err(Error::Domain(format!("modulus must be positive, got {c}")));
    }
    // extended Euclid on (a mod c, c)
    let a0 = a.rem_euclid(c);
    let (mut r0, mut r1) = (c, a0);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NonInvertible { a, modulus: c });
    }
    Ok(t0.rem_euclid(c))
}

/// All positive divisors of `c`, sorted ascending.
pub fn divisors(c: u64) -> Vec<u64> {
    assert!(c >= 1, "divisors of 0 are not a finite set");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= c {
        if c % d == 0 {
            small.push(d);
            if d * d != c {
                large.push(c / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Moebius function: 0 on non-squarefree n, else (-1)^(number of primes).
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined on positive integers");
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_pins() {
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert!(matches!(
            mod_inverse(2, 4),
            Err(Error::NonInvertible { a: 2, modulus: 4 })
        ));
        // negative representatives reduce first
        assert_eq!(mod_inverse(-4, 7).unwrap(), mod_inverse(3, 7).unwrap());
        // the trivial modulus inverts everything to 0
        assert_eq!(mod_inverse(5, 1).unwrap(), 0);
    }

    #[test]
    fn divisor_and_mobius_pins() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
    }

    proptest! {
        #[test]
        fn inverse_really_inverts(a in -1000i64..1000, c in 1i64..500) {
            prop_assume!(gcd(a, c) == 1);
            let inv = mod_inverse(a, c).unwrap();
            prop_assert!((0..c).contains(&inv));
            prop_assert_eq!((a * inv).rem_euclid(c), 1 % c);
        }

        #[test]
        fn gcd_divides_and_bounds(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let g = gcd(a, b);
            prop_assume!(g != 0);
            prop_assert_eq!(a % g, 0);
            prop_assert_eq!(b % g, 0);
            prop_assert!(g > 0);
        }

        #[test]
        fn mobius_is_multiplicative(a in 1u64..200, b in 1u64..200) {
            prop_assume!(gcd(a as i64, b as i64) == 1);
            prop_assert_eq!(mobius(a * b), mobius(a) * mobius(b));
        }

        #[test]
        fn divisor_pairs_multiply_back(c in 1u64..5000) {
            let ds = divisors(c);
            prop_assert!(ds.windows(2).all(|w| w[0] < w[1]));
            for &d in &ds {
                prop_assert_eq!(c % d, 0);
            }
            // Moebius pairs sum to the unit indicator over each divisor list.
            let total: i64 = ds.iter().map(|&d| i64::from(mobius(d))).sum();
            prop_assert_eq!(total, i64::from(c == 1));
        }
    }
}
