//! The Galois ring `GR(4, n) = Z_4[x] / (f)` with its Teichmüller set,
//! generalized Frobenius and trace.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::prime_factors;
use crate::error::Error;
use crate::poly;
use crate::Result;

/// Largest supported ring degree (the ring then has 4^8 = 65536 elements).
pub const MAX_RING_DEGREE: usize = 8;

/// Element of a [`GaloisRing`], packed as `Σ coeffs[i]·4^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement(u32);

impl RingElement {
    pub const ZERO: RingElement = RingElement(0);
    pub const ONE: RingElement = RingElement(1);

    pub fn packed(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct GaloisRing {
    n: usize,
    size: u32,
    modulus: Vec<u8>,
    teichmuller: Vec<RingElement>,
    // enumeration position of each Teichmüller element, u32::MAX elsewhere
    position: Vec<u32>,
    // φ(x^i) and tr(x^i) for the power basis; both maps are Z_4-linear
    frobenius_basis: Vec<RingElement>,
    trace_basis: Vec<u8>,
}

impl GaloisRing {
    /// Builds `GR(4, n)`. Without a modulus, the smallest primitive binary
    /// polynomial of degree `n` is lifted to `Z_4` by Graeffe's root-squaring
    /// step, so its root is itself a Teichmüller generator.
    ///
    /// A supplied modulus must be monic of degree `n` over `Z_4` with an
    /// irreducible reduction mod 2.
    pub fn new(n: usize, modulus: Option<&[u8]>) -> Result<GaloisRing> {
        if n == 0 || n > MAX_RING_DEGREE {
            return Err(Error::InvalidDegree(n));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(Error::InvalidModulus("expected a monic polynomial of degree n"));
                }
                if m.iter().any(|&c| c >= 4) {
                    return Err(Error::InvalidModulus("coefficient out of range"));
                }
                let reduced: Vec<u32> = m.iter().map(|&c| (c % 2) as u32).collect();
                if !poly::is_irreducible(&reduced, 2) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => graeffe_lift(&smallest_primitive_binary(n)),
        };
        Ok(GaloisRing::with_modulus(n, modulus))
    }

    fn with_modulus(n: usize, modulus: Vec<u8>) -> GaloisRing {
        let size = 4u32.pow(n as u32);
        let mut ring = GaloisRing {
            n,
            size,
            modulus,
            teichmuller: Vec::new(),
            position: Vec::new(),
            frobenius_basis: Vec::new(),
            trace_basis: Vec::new(),
        };

        // Teichmüller representative of y is y^(2^n): squaring kills the 2-adic tail.
        let order = (1u64 << n) - 1;
        let divisors = prime_factors(order);
        let has_full_order = |ring: &GaloisRing, t: RingElement| {
            ring.pow(t, order) == RingElement::ONE
                && divisors.iter().all(|&r| ring.pow(t, order / r) != RingElement::ONE)
        };
        let x = ring.variable();
        let xi = core::iter::once(ring.teichmuller_part(x))
            .chain((1..1u32 << n).map(|c| ring.teichmuller_part(binary_lift(c))))
            .find(|&t| has_full_order(&ring, t))
            .expect("the unit group of the residue field is cyclic");

        let mut teichmuller = vec![RingElement::ZERO];
        let mut acc = RingElement::ONE;
        for _ in 0..order {
            teichmuller.push(acc);
            acc = ring.mul(acc, xi);
        }
        let mut position = vec![u32::MAX; size as usize];
        for (i, t) in teichmuller.iter().enumerate() {
            position[t.0 as usize] = i as u32;
        }
        ring.teichmuller = teichmuller;
        ring.position = position;

        ring.frobenius_basis = (0..n)
            .map(|i| ring.frobenius_slow(ring.pow(x, i as u64)))
            .collect();
        ring.trace_basis = (0..n)
            .map(|i| {
                let mut sum = RingElement::ZERO;
                let mut conj = ring.pow(x, i as u64);
                for _ in 0..n {
                    sum = ring.add(sum, conj);
                    conj = ring.frobenius(conj);
                }
                assert!(sum.0 < 4, "trace must land in Z_4");
                sum.0 as u8
            })
            .collect();
        ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of ring elements, `4^n`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Ascending coefficients of the defining polynomial over `Z_4`.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Teichmüller set in enumeration order `0, 1, ξ, ξ², …`.
    pub fn teichmuller(&self) -> &[RingElement] {
        &self.teichmuller
    }

    /// The Teichmüller generator `ξ`.
    pub fn xi(&self) -> RingElement {
        if self.n == 1 {
            RingElement::ONE
        } else {
            self.teichmuller[2]
        }
    }

    /// Enumeration position of a Teichmüller element.
    pub fn teichmuller_index(&self, t: RingElement) -> Option<usize> {
        match self.position[t.0 as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// The class of the polynomial variable `x`.
    pub fn variable(&self) -> RingElement {
        if self.n == 1 {
            RingElement((4 - self.modulus[0] as u32) % 4)
        } else {
            RingElement(4)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> {
        (0..self.size).map(RingElement)
    }

    pub fn from_int(&self, k: i64) -> RingElement {
        RingElement(k.rem_euclid(4) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<RingElement> {
        if coeffs.len() > self.n || coeffs.iter().any(|&c| c >= 4) {
            return Err(Error::InvalidParameters("ring element coefficients out of range"));
        }
        Ok(RingElement(coeffs.iter().rev().fold(0, |acc, &c| acc * 4 + c as u32)))
    }

    pub fn coeffs(&self, x: RingElement) -> Vec<u8> {
        (0..self.n).map(|i| ((x.0 >> (2 * i)) & 3) as u8).collect()
    }

    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        let mut out = 0;
        for i in 0..self.n {
            let s = ((a.0 >> (2 * i)) + (b.0 >> (2 * i))) & 3;
            out |= s << (2 * i);
        }
        RingElement(out)
    }

    pub fn neg(&self, a: RingElement) -> RingElement {
        let mut out = 0;
        for i in 0..self.n {
            let s = (4 - ((a.0 >> (2 * i)) & 3)) & 3;
            out |= s << (2 * i);
        }
        RingElement(out)
    }

    pub fn sub(&self, a: RingElement, b: RingElement) -> RingElement {
        self.add(a, self.neg(b))
    }

    /// Multiplication by an integer scalar.
    pub fn scale(&self, r: u8, a: RingElement) -> RingElement {
        let mut out = 0;
        for i in 0..self.n {
            let s = (r as u32 * ((a.0 >> (2 * i)) & 3)) & 3;
            out |= s << (2 * i);
        }
        RingElement(out)
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        let n = self.n;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u8; 2 * n];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) & 3;
            }
        }
        // reduce with the monic modulus from the top down
        for d in (n..2 * n).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                prod[d - n + i] = (prod[d - n + i] + 4 * 4 - c * m) & 3;
            }
        }
        RingElement(prod[..n].iter().rev().fold(0, |acc, &c| acc * 4 + c as u32))
    }

    pub fn pow(&self, a: RingElement, mut e: u64) -> RingElement {
        let mut acc = RingElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Units are exactly the elements with nonzero reduction mod 2.
    pub fn is_unit(&self, a: RingElement) -> bool {
        (0..self.n).any(|i| (a.0 >> (2 * i)) & 1 == 1)
    }

    /// Teichmüller part `a` of `y = a + 2b`.
    pub fn teichmuller_part(&self, y: RingElement) -> RingElement {
        (0..self.n).fold(y, |acc, _| self.mul(acc, acc))
    }

    /// The unique `(a, b)` with `a, b` Teichmüller and `y = a + 2b`.
    pub fn two_adic(&self, y: RingElement) -> (RingElement, RingElement) {
        let a = self.teichmuller_part(y);
        let diff = self.sub(y, a);
        // diff has even coefficients; halve them and take the Teichmüller part
        let half = RingElement((0..self.n).fold(0, |acc, i| {
            acc | ((((diff.0 >> (2 * i)) & 3) >> 1) << (2 * i))
        }));
        (a, self.teichmuller_part(half))
    }

    fn frobenius_slow(&self, y: RingElement) -> RingElement {
        let (a, b) = self.two_adic(y);
        let b2 = self.mul(b, b);
        self.add(self.mul(a, a), self.add(b2, b2))
    }

    /// Generalized Frobenius `φ(a + 2b) = a² + 2b²`.
    pub fn frobenius(&self, y: RingElement) -> RingElement {
        if self.frobenius_basis.is_empty() {
            return self.frobenius_slow(y);
        }
        let mut out = RingElement::ZERO;
        for (i, &img) in self.frobenius_basis.iter().enumerate() {
            let c = ((y.0 >> (2 * i)) & 3) as u8;
            out = self.add(out, self.scale(c, img));
        }
        out
    }

    /// Trace to `Z_4`, `Σ_{k<n} φ^k(y)`, as an integer in `[0, 4)`.
    pub fn trace(&self, y: RingElement) -> u8 {
        let mut t = 0u32;
        for (i, &bt) in self.trace_basis.iter().enumerate() {
            t += ((y.0 >> (2 * i)) & 3) * bt as u32;
        }
        (t & 3) as u8
    }

    /// Exhaustively confirms `ker tr = {β − φ(β)}`.
    pub fn trace_kernel_check(&self) -> bool {
        let mut kernel = vec![false; self.size as usize];
        let mut image = vec![false; self.size as usize];
        for y in self.elements() {
            if self.trace(y) == 0 {
                kernel[y.0 as usize] = true;
            }
            image[self.sub(y, self.frobenius(y)).0 as usize] = true;
        }
        kernel == image
    }
}

fn binary_lift(c: u32) -> RingElement {
    // bits of c become 0/1 coefficients in base 4
    let mut out = 0;
    let mut i = 0;
    let mut c = c;
    while c > 0 {
        out |= (c & 1) << (2 * i);
        c >>= 1;
        i += 1;
    }
    RingElement(out)
}

/// Smallest primitive polynomial of degree `n` over `Z_2`, ascending.
fn smallest_primitive_binary(n: usize) -> Vec<u32> {
    let order = (1u64 << n) - 1;
    let divisors = prime_factors(order);
    (0..1u32 << n)
        .map(|t| {
            let mut f: Vec<u32> = (0..n).map(|i| (t >> i) & 1).collect();
            f.push(1);
            f
        })
        .find(|f| {
            f[0] == 1
                && poly::is_irreducible(f, 2)
                && divisors
                    .iter()
                    .all(|&r| poly::pow_mod(&[0, 1], order / r, f, 2) != [1])
        })
        .expect("primitive polynomials exist in every degree")
}

/// Graeffe lift: iterate `f(x²) = (−1)^n f(x) f(−x)` over `Z_4` until stable.
pub(crate) fn graeffe_lift(h: &[u32]) -> Vec<u8> {
    let n = h.len() - 1;
    let mut f: Vec<u8> = h.iter().map(|&c| (c % 4) as u8).collect();
    for _ in 0..8 {
        let neg: Vec<u8> = f
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { (4 - c) % 4 } else { c })
            .collect();
        let mut prod = vec![0u8; 2 * n + 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in neg.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) & 3;
            }
        }
        let sign = if n % 2 == 1 { 3 } else { 1 };
        let next: Vec<u8> = (0..=n).map(|i| (prod[2 * i] * sign) & 3).collect();
        if next == f {
            return f;
        }
        f = next;
    }
    unreachable!("the Graeffe lift is stable after one step over Z_4")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_is_degree_one() {
        let r = GaloisRing::new(1, None).unwrap();
        // x + 1 over Z_2 lifts to x - 1, whose root is 1
        assert_eq!(r.modulus(), &[3, 1]);
        assert_eq!(r.teichmuller(), &[RingElement::ZERO, RingElement::ONE]);
        for k in 0..4 {
            assert_eq!(r.trace(r.from_int(k)), k as u8);
        }
        assert!(r.trace_kernel_check());
    }

    #[test]
    fn default_lifts() {
        // x^2+x+1 lifts to itself (it divides x^3-1 over the integers),
        // x^3+x+1 lifts to x^3+2x^2+x+3.
        assert_eq!(GaloisRing::new(2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisRing::new(3, None).unwrap().modulus(), &[3, 1, 2, 1]);
    }

    #[test]
    fn lift_divides_cyclotomic_binomial() {
        for n in 1..=6 {
            let r = GaloisRing::new(n, None).unwrap();
            let x = r.variable();
            assert_eq!(r.pow(x, (1 << n) - 1), RingElement::ONE, "n = {n}");
            assert_eq!(r.xi(), r.teichmuller_part(x));
        }
    }

    #[test]
    fn alternative_presentation_of_gr42() {
        // h(f) = f^2 - f + 1 = f^2 + 3f + 1 over Z_4
        let r = GaloisRing::new(2, Some(&[1, 3, 1])).unwrap();
        let f = r.variable();
        let f2 = r.mul(f, f);
        assert_eq!(f2, r.add(f, r.from_int(3)));
        assert_eq!(r.sub(f, f2), RingElement::ONE);
        // f itself has order 6; its Teichmüller part -f generates T_2
        assert_eq!(r.pow(f, 3), r.from_int(3));
        let mut t = r.teichmuller().to_vec();
        t.sort();
        let mut expected = vec![RingElement::ZERO, RingElement::ONE, r.neg(f), r.add(f, r.from_int(3))];
        expected.sort();
        assert_eq!(t, expected);
    }

    #[test]
    fn rejects_bad_modulus() {
        assert_eq!(GaloisRing::new(0, None).unwrap_err(), Error::InvalidDegree(0));
        assert_eq!(GaloisRing::new(2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus);
        assert!(matches!(GaloisRing::new(2, Some(&[1, 1, 3])), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn trace_of_one_and_xi() {
        let r = GaloisRing::new(2, None).unwrap();
        assert_eq!(r.trace(RingElement::ONE), 2);
        // oracle: ξ + φ(ξ) with φ(ξ) = ξ² for Teichmüller ξ, computed by hand
        let xi = r.xi();
        let sum = r.add(xi, r.mul(xi, xi));
        assert!(sum.packed() < 4);
        assert_eq!(r.trace(xi) as u32, sum.packed());
    }

    #[test]
    fn teichmuller_structure() {
        for n in 1..=4 {
            let r = GaloisRing::new(n, None).unwrap();
            let t = r.teichmuller();
            assert_eq!(t.len(), 1 << n);
            let order = (1u64 << n) - 1;
            for &a in &t[1..] {
                assert_eq!(r.pow(a, order), RingElement::ONE);
            }
            for &a in t {
                for &b in t {
                    assert!(r.teichmuller_index(r.mul(a, b)).is_some());
                }
            }
            let mut residues: Vec<Vec<u8>> =
                t.iter().map(|&a| r.coeffs(a).iter().map(|c| c % 2).collect()).collect();
            residues.sort();
            residues.dedup();
            assert_eq!(residues.len(), t.len());

            // (a, b) -> a + 2b is a bijection onto the ring
            let mut hit = vec![false; r.size() as usize];
            for &a in t {
                for &b in t {
                    let y = r.add(a, r.scale(2, b));
                    assert!(!hit[y.packed() as usize]);
                    hit[y.packed() as usize] = true;
                    assert_eq!(r.two_adic(y), (a, b));
                }
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn frobenius_is_an_automorphism_of_order_n() {
        for n in 1..=4 {
            let r = GaloisRing::new(n, None).unwrap();
            let elems: Vec<RingElement> = r.elements().collect();
            let mut image: Vec<RingElement> = elems.iter().map(|&y| r.frobenius(y)).collect();
            for &a in &elems {
                assert_eq!(r.frobenius(a), r.frobenius_slow(a));
                let mut y = a;
                for _ in 0..n {
                    y = r.frobenius(y);
                }
                assert_eq!(y, a);
                for &b in elems.iter().step_by(3) {
                    assert_eq!(r.frobenius(r.mul(a, b)), r.mul(r.frobenius(a), r.frobenius(b)));
                    assert_eq!(r.frobenius(r.add(a, b)), r.add(r.frobenius(a), r.frobenius(b)));
                }
            }
            image.sort();
            assert_eq!(image, elems);
        }
    }

    #[test]
    fn trace_commutes_with_scalars() {
        for n in 1..=3 {
            let r = GaloisRing::new(n, None).unwrap();
            assert!(r.trace_kernel_check(), "n = {n}");
            for y in r.elements() {
                for k in 0..4u8 {
                    assert_eq!((k * r.trace(y)) % 4, r.trace(r.scale(k, y)));
                }
            }
        }
    }
}
