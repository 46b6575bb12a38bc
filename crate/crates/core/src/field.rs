//! Finite fields `GF(p^n)` for odd `p`, table-driven.
//!
//! Elements are coefficient vectors modulo a monic irreducible polynomial,
//! packed into a single integer `Σ c_i p^i`. Multiplication goes through
//! discrete log tables built from a primitive element `g`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{checked_pow, is_prime, prime_factors};
use crate::error::Error;
use crate::poly;
use crate::Result;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Element of a [`Field`], packed as `Σ coeffs[i]·p^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed representation.
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    n: usize,
    q: u32,
    modulus: Vec<u32>,
    generator: FieldElement,
    // exp[k] = g^k for k in 0..q-1
    exp: Vec<u32>,
    // log[x] for x != 0
    log: Vec<u32>,
    order: Vec<FieldElement>,
    position: Vec<u32>,
    trace: Vec<u32>,
}

impl Field {
    /// Builds `GF(p^n)`. Without a modulus the smallest monic irreducible of
    /// degree `n` is used, ordering candidates by their packed lower
    /// coefficients (highest degree most significant).
    pub fn new(p: u32, n: usize, modulus: Option<&[u32]>) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let q = match checked_pow(p as u64, n) {
            Some(q) if q <= MAX_FIELD_ORDER => q as u32,
            _ => return Err(Error::FieldTooLarge { p, n }),
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(Error::InvalidModulus("expected a monic polynomial of degree n"));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range"));
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, n),
        };
        Ok(Field::with_modulus(p, n, q, modulus))
    }

    /// The prime field `Z_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    fn with_modulus(p: u32, n: usize, q: u32, modulus: Vec<u32>) -> Field {
        let slow_mul = |a: u32, b: u32| -> u32 {
            pack(&poly::mul_mod(&unpack(a, p, n), &unpack(b, p, n), &modulus, p), p)
        };
        let slow_pow = |mut base: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let group = (q - 1) as u64;
        let divisors = prime_factors(group);
        let generator = (1..q)
            .find(|&c| divisors.iter().all(|&r| slow_pow(c, group / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for k in 0..q - 1 {
            exp.push(acc);
            log[acc as usize] = k;
            acc = slow_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1);

        // Prime fields enumerate as 0, 1, ..., p-1; extensions as 0, 1, g, g^2, ...
        let order: Vec<FieldElement> = if n == 1 {
            (0..q).map(FieldElement).collect()
        } else {
            core::iter::once(0).chain(exp.iter().copied()).map(FieldElement).collect()
        };
        let mut position = vec![0u32; q as usize];
        for (i, x) in order.iter().enumerate() {
            position[x.0 as usize] = i as u32;
        }

        let mut field = Field {
            p,
            n,
            q,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
            order,
            position,
            trace: Vec::new(),
        };
        // The trace is Z_p-linear, so the images of the power basis suffice.
        let basis_traces: Vec<u32> = (0..n)
            .map(|i| {
                let xi = FieldElement(p.pow(i as u32));
                let mut sum = FieldElement::ZERO;
                let mut conj = xi;
                for _ in 0..n {
                    sum = field.add(sum, conj);
                    conj = field.frobenius(conj);
                }
                assert!(sum.0 < p, "trace must land in the prime field");
                sum.0
            })
            .collect();
        field.trace = (0..q)
            .map(|x| {
                let mut t = 0u64;
                let mut rest = x;
                for &bt in &basis_traces {
                    t += (rest % p) as u64 * bt as u64;
                    rest /= p;
                }
                (t % p as u64) as u32
            })
            .collect();
        field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the defining polynomial, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables and the enumeration.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// The class of the polynomial variable `x`.
    pub fn variable(&self) -> FieldElement {
        if self.n == 1 {
            // x ≡ -modulus[0] in a prime field
            FieldElement((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElement(self.p)
        }
    }

    /// Element in enumeration position `index`.
    pub fn element(&self, index: usize) -> FieldElement {
        self.order[index]
    }

    /// Enumeration position of `x`.
    pub fn index_of(&self, x: FieldElement) -> usize {
        self.position[x.0 as usize] as usize
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> &[FieldElement] {
        &self.order
    }

    /// Image of the integer `k` in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameters("field element coefficients out of range"));
        }
        Ok(FieldElement(pack(coeffs, self.p)))
    }

    /// Coefficient vector of length `n`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        unpack(x.0, self.p, self.n)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1) as u64;
        FieldElement(self.exp[k as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let k = (self.q - 1 - self.log[a.0 as usize]) % (self.q - 1);
        Some(FieldElement(self.exp[k as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let k = (self.log[a.0 as usize] as u64 * (e % (self.q - 1) as u64)) % (self.q - 1) as u64;
        FieldElement(self.exp[k as usize])
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    /// `x ↦ x^(p^k)`.
    pub fn frobenius_pow(&self, x: FieldElement, k: usize) -> FieldElement {
        (0..k % self.n).fold(x, |acc, _| self.frobenius(acc))
    }

    /// Absolute trace `Σ_{k<n} x^(p^k)` as an integer in `[0, p)`.
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace[x.0 as usize]
    }
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut x: u32, p: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x % p);
        x /= p;
    }
    out
}

fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    let tails = p.pow(n as u32);
    (0..tails)
        .map(|t| {
            let mut f = unpack(t, p, n);
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
