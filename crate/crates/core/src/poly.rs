//! Dense polynomials over `Z_p` as ascending coefficient vectors.
//!
//! Only what field construction needs: products, remainders, gcd and
//! modular powers. Vectors are kept trimmed (no trailing zeros); the zero
//! polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::inv_mod_prime;

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let m = trim(m.to_vec());
    let dm = degree(&m).expect("division by zero polynomial");
    let lead_inv = inv_mod_prime(m[dm], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64 % p64).collect();
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p64;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p64 - factor * c as u64 % p64) % p64;
        }
    }
    trim(r.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test: a degree-`n` polynomial is irreducible iff it
/// shares no factor with `x^(p^k) - x` for every `k <= n/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(n) = degree(f) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 0..n / 2 {
        h = pow_mod(&h, p as u64, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_z3() {
        // x^2+1, x^2+x+2, x^2+2x+2 are the irreducible monic quadratics over Z_3.
        let irreducible: Vec<Vec<u32>> = (0..9u32)
            .map(|t| vec![t % 3, t / 3, 1])
            .filter(|f| is_irreducible(f, 3))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 0, 1], vec![2, 1, 1], vec![2, 2, 1]]);
    }

    #[test]
    fn reducible_without_roots() {
        // (x^2+x+1)(x^3+x+1) over Z_2 has no root but is reducible.
        let f = mul(&[1, 1, 1], &[1, 1, 0, 1], 2);
        assert_eq!(degree(&f), Some(5));
        assert!(!is_irreducible(&f, 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
    }

    #[test]
    fn remainder_and_gcd() {
        // x^3 mod (x^2+1) over Z_3 is -x = 2x.
        assert_eq!(rem(&[0, 0, 0, 1], &[1, 0, 1], 3), vec![0, 2]);
        // gcd((x+1)(x+2), (x+1)^2) = x+1 up to a unit
        let a = mul(&[1, 1], &[2, 1], 3);
        let b = mul(&[1, 1], &[1, 1], 3);
        let g = gcd(&a, &b, 3);
        assert_eq!(degree(&g), Some(1));
        assert!(rem(&a, &g, 3).is_empty());
    }
}
