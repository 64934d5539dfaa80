//! Scalar arithmetic in the prime field F_p, with p held in a `u64`.
//!
//! Characteristics are capped below 2^31 so that products fit comfortably in
//! `u128` intermediates everywhere else in the crate.

use crate::error::{Error, Result};

/// Largest admissible characteristic (exclusive).
pub const MAX_CHAR: u64 = 1 << 31;

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u128, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p` (Fermat). Panics on `a == 0`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero");
    pow_mod(a, (p - 2) as u128, p)
}

/// Deterministic primality test: trial division up to 2^16, then
/// Miller-Rabin with a base set valid for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 41u64;
    while d <= 0xffff && d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    if n < (1u64 << 32) {
        // trial division above was already conclusive
        return true;
    }
    miller_rabin(n)
}

fn miller_rabin(n: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Validates that `p` is a prime in the supported range.
pub fn check_characteristic(p: u64) -> Result<()> {
    if p >= MAX_CHAR {
        return Err(Error::CharTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Quadratic-residue test in F_p. Zero counts as a square; for p = 2 every
/// element is a square.
pub fn fp_is_square(p: u64, c: u64) -> bool {
    let c = c % p;
    if c == 0 || p == 2 {
        return true;
    }
    pow_mod(c, ((p - 1) / 2) as u128, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(257));
        assert!(is_prime(2147483647)); // 2^31 - 1
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(91));
        assert!(!is_prime(65537 * 3));
    }

    #[test]
    fn characteristic_range() {
        assert!(check_characteristic(2).is_ok());
        assert!(matches!(
            check_characteristic(4),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            check_characteristic(1 << 31),
            Err(Error::CharTooLarge(_))
        ));
    }

    #[test]
    fn squares_mod_5() {
        // squares mod 5 are {0, 1, 4}
        let squares: Vec<u64> = (0..5).filter(|&c| fp_is_square(5, c)).collect();
        assert_eq!(squares, vec![0, 1, 4]);
        assert!(!fp_is_square(5, 2));
    }

    #[test]
    fn square_test_matches_euler_criterion() {
        // exhaustive for p <= 97
        for p in [3u64, 5, 7, 11, 13, 31, 71, 97] {
            for c in 0..p {
                let euler = c == 0 || pow_mod(c, ((p - 1) / 2) as u128, p) == 1;
                assert_eq!(fp_is_square(p, c), euler, "p={p} c={c}");
            }
        }
        // p = 71: 2 is a square (12^2 = 144 = 2 mod 71)
        assert!(fp_is_square(71, 2));
    }

    #[test]
    fn pow_and_inverse() {
        for p in [3u64, 13, 257] {
            for a in 1..p.min(60) {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
        assert_eq!(pow_mod(2, 10, 1_000_003), 1024);
    }
}
