use alloc::vec::Vec;

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod_prime(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, m: u32) -> u32 {
    let m64 = m as u64;
    let mut b = base as u64 % m64;
    let mut acc = 1 % m64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m64;
        }
        b = b * b % m64;
        exp >>= 1;
    }
    acc as u32
}

/// `base^exp`, or `None` on overflow.
pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
