//! Small integer number theory used across the crate.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The least `s >= 1` with `n | p^s - 1`, i.e. the multiplicative order of `p` mod `n`.
pub fn s_of_n(p: u64, n: u64) -> Result<u32> {
    if n == 0 || gcd(n, p) != 1 {
        return Err(Error::NotCoprime { n, p });
    }
    if n == 1 {
        return Ok(1);
    }
    let base = p % n;
    let mut acc = base;
    let mut s = 1u32;
    while acc != 1 {
        acc = acc * base % n;
        s += 1;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_s(p: u64, n: u64) -> u32 {
        (1..=n as u32).find(|&s| (checked_pow(p, s).unwrap() - 1).is_multiple_of(n)).unwrap()
    }

    #[test]
    fn s_of_n_examples() {
        assert_eq!(s_of_n(5, 4).unwrap(), 1);
        assert_eq!(s_of_n(2, 3).unwrap(), 2);
        assert_eq!(s_of_n(3, 5).unwrap(), 4);
        assert!(s_of_n(5, 10).is_err());
    }

    #[test]
    fn s_of_n_matches_brute_force() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=12u64 {
                if gcd(n, p) == 1 {
                    assert_eq!(s_of_n(p, n).unwrap(), brute_s(p, n), "p={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(24), [1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(prime_factors(342), [2, 3, 19]);
    }
}
