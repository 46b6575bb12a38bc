//! The four constructions of complete MUB sets as exponent matrices.

use alloc::vec::Vec;

use crate::arith::gcd;
use crate::error::Error;
use crate::family::{Construction, ExponentVector, FamilyParams, MubFamily};
use crate::field::{Field, FieldElement};
use crate::planar::{planar_check, PlanarFunction, Planarity};
use crate::ring::GaloisRing;
use crate::Result;

/// The algebra a family is built over.
#[derive(Clone, Debug)]
pub enum Algebra {
    Field(Field),
    Ring(GaloisRing),
}

impl Algebra {
    /// Rebuilds the field or ring recorded in a family's parameters.
    pub fn from_params(params: &FamilyParams) -> Result<Algebra> {
        match params.construction {
            Construction::GaloisRing => {
                let modulus: Vec<u8> = params
                    .modulus
                    .iter()
                    .map(|&c| u8::try_from(c).map_err(|_| Error::InvalidModulus("coefficient out of range")))
                    .collect::<Result<_>>()?;
                Ok(Algebra::Ring(GaloisRing::new(params.n, Some(&modulus))?))
            }
            _ => Ok(Algebra::Field(Field::new(params.p, params.n, Some(&params.modulus))?)),
        }
    }
}

fn field_params(field: &Field, construction: Construction) -> FamilyParams {
    FamilyParams {
        construction,
        p: field.characteristic(),
        n: field.degree(),
        modulus: field.modulus().to_vec(),
    }
}

fn field_family<F>(field: &Field, construction: Construction, mut exponent: F) -> MubFamily
where
    F: FnMut(FieldElement, FieldElement, FieldElement) -> u32,
{
    let m = field.characteristic() as u8;
    let elems = field.elements();
    let bases = elems
        .iter()
        .map(|&a| {
            elems
                .iter()
                .map(|&b| {
                    let entries = elems.iter().map(|&x| exponent(a, b, x) as u8).collect();
                    ExponentVector::from_raw(m, entries)
                })
                .collect()
        })
        .collect();
    MubFamily::from_vectors(field_params(field, construction), m, bases)
}

/// `v_ab[x] = tr(a·Π(x) + b·x)`.
pub fn build_planar(field: &Field, pi: &PlanarFunction) -> Result<MubFamily> {
    if let Planarity::NotPlanar { shift } = planar_check(field, pi) {
        return Err(Error::NotPlanar { shift: field.index_of(shift) as u32 });
    }
    let construction = Construction::Planar { poly: pi.polynomial().map(<[u32]>::to_vec) };
    Ok(field_family(field, construction, |a, b, x| {
        field.trace(field.add(field.mul(a, pi.eval(x)), field.mul(b, x)))
    }))
}

/// `v_ab[x] = tr((x+a)³ + b·(x+a))`; needs `p ≥ 5`.
pub fn build_alltop(field: &Field) -> Result<MubFamily> {
    let p = field.characteristic();
    if p < 5 {
        return Err(Error::CharacteristicTooSmall(p));
    }
    Ok(field_family(field, Construction::Alltop, |a, b, x| {
        let y = field.add(x, a);
        field.trace(field.add(field.pow(y, 3), field.mul(b, y)))
    }))
}

/// Checks `n` odd, `gcd(s, n) = 1` and `1 ≤ s < n/2`.
pub fn check_symplectic_params(n: usize, s: u32) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameters("symplectic construction needs odd n"));
    }
    if s == 0 || 2 * s as usize >= n {
        return Err(Error::InvalidParameters("symplectic construction needs 1 <= s < n/2"));
    }
    if gcd(s as u64, n as u64) != 1 {
        return Err(Error::InvalidParameters("symplectic construction needs gcd(s, n) = 1"));
    }
    Ok(())
}

/// Smallest valid `s` for degree `n`, if any.
pub fn default_symplectic_s(n: usize) -> Option<u32> {
    (1..n as u32).find(|&s| check_symplectic_params(n, s).is_ok())
}

/// `v_ab[x] = tr(a·x + b·x^{p^{n−s}+1} + b^{p^s}·x^{p^s+1})`.
///
/// Bases are grouped by the quadratic parameter: basis `b` holds `v_ab`
/// for every `a`. Grouping by `a` instead puts vectors with different
/// quadratic parts in one basis, and those are unbiased, not orthogonal.
pub fn build_symplectic(field: &Field, s: u32) -> Result<MubFamily> {
    let n = field.degree();
    check_symplectic_params(n, s)?;
    let p = field.characteristic() as u64;
    let s = s as usize;
    let e1 = p.pow((n - s) as u32) + 1;
    let e2 = p.pow(s as u32) + 1;
    let q = field.order() as usize;
    let mut x1 = alloc::vec![FieldElement::ZERO; q];
    let mut x2 = alloc::vec![FieldElement::ZERO; q];
    for &x in field.elements() {
        x1[x.packed() as usize] = field.pow(x, e1);
        x2[x.packed() as usize] = field.pow(x, e2);
    }
    Ok(field_family(field, Construction::Symplectic { s: s as u32 }, |b, a, x| {
        let bs = field.frobenius_pow(b, s);
        let i = x.packed() as usize;
        let t = field.add(field.mul(a, x), field.add(field.mul(b, x1[i]), field.mul(bs, x2[i])));
        field.trace(t)
    }))
}

/// `v_ab[x] = tr((a + 2b)·x)` over the Teichmüller set; exponents mod 4.
pub fn build_galois_ring(ring: &GaloisRing) -> MubFamily {
    let t = ring.teichmuller();
    let bases = t
        .iter()
        .map(|&a| {
            t.iter()
                .map(|&b| {
                    let alpha = ring.add(a, ring.scale(2, b));
                    let entries = t.iter().map(|&x| ring.trace(ring.mul(alpha, x))).collect();
                    ExponentVector::from_raw(4, entries)
                })
                .collect()
        })
        .collect();
    let params = FamilyParams {
        construction: Construction::GaloisRing,
        p: 2,
        n: ring.degree(),
        modulus: ring.modulus().iter().map(|&c| c as u32).collect(),
    };
    MubFamily::from_vectors(params, 4, bases)
}

/// Builds a family from a construction tag, `p`, `n` and an optional
/// modulus. `p` is ignored for the Galois-ring construction.
pub fn build(construction: &Construction, p: u32, n: usize, modulus: Option<&[u32]>) -> Result<MubFamily> {
    match construction {
        Construction::GaloisRing => {
            let modulus: Option<Vec<u8>> = modulus
                .map(|m| {
                    m.iter()
                        .map(|&c| u8::try_from(c).map_err(|_| Error::InvalidModulus("coefficient out of range")))
                        .collect::<Result<Vec<u8>>>()
                })
                .transpose()?;
            Ok(build_galois_ring(&GaloisRing::new(n, modulus.as_deref())?))
        }
        Construction::Alltop => {
            if p == 3 {
                return Err(Error::CharacteristicTooSmall(p));
            }
            build_alltop(&Field::new(p, n, modulus)?)
        }
        Construction::Symplectic { s } => {
            check_symplectic_params(n, *s)?;
            build_symplectic(&Field::new(p, n, modulus)?, *s)
        }
        Construction::Planar { poly } => {
            let field = Field::new(p, n, modulus)?;
            let pi = match poly {
                Some(c) => PlanarFunction::from_polynomial(&field, c)?,
                None => PlanarFunction::square(&field),
            };
            build_planar(&field, &pi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn rows(f: &MubFamily, a: usize) -> Vec<Vec<u8>> {
        f.bases()[a].iter().map(|v| v.entries().to_vec()).collect()
    }

    #[test]
    fn planar_z3_first_basis() {
        let field = Field::prime(3).unwrap();
        let fam = build_planar(&field, &PlanarFunction::square(&field)).unwrap();
        // tr(bx) = bx on Z_3, evaluated by hand
        let oracle: Vec<Vec<u8>> = (0..3u8).map(|b| (0..3u8).map(|x| b * x % 3).collect()).collect();
        assert_eq!(rows(&fam, 0), oracle);
        assert_eq!(rows(&fam, 0), vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
        // V_1: x^2 + bx
        let v1: Vec<Vec<u8>> = (0..3u8).map(|b| (0..3u8).map(|x| (x * x + b * x) % 3).collect()).collect();
        assert_eq!(rows(&fam, 1), v1);
    }

    #[test]
    fn planar_counts_and_distinctness() {
        for (p, n) in [(5, 1), (3, 2), (7, 1)] {
            let field = Field::new(p, n, None).unwrap();
            let fam = build_planar(&field, &PlanarFunction::square(&field)).unwrap();
            let q = field.order() as usize;
            assert_eq!(fam.bases().len(), q);
            assert!(fam.bases().iter().all(|b| b.len() == q));
            assert_eq!(fam.vector(0, 0), &ExponentVector::zero(p as u8, q));
            let distinct: BTreeSet<_> = fam.vectors().collect();
            assert_eq!(distinct.len(), q * q);
            assert!(fam.vectors().all(|v| v.entries().iter().all(|&e| (e as u32) < p)));
        }
    }

    #[test]
    fn planar_rejects_non_planar() {
        let field = Field::prime(5).unwrap();
        let id = PlanarFunction::from_polynomial(&field, &[0, 1]).unwrap();
        assert!(matches!(build_planar(&field, &id), Err(Error::NotPlanar { .. })));
    }

    #[test]
    fn alltop_z5_first_row() {
        let field = Field::prime(5).unwrap();
        let fam = build_alltop(&field).unwrap();
        let cubes: Vec<u8> = (0..5u32).map(|x| (x.pow(3) % 5) as u8).collect();
        assert_eq!(cubes, vec![0, 1, 3, 2, 4]);
        assert_eq!(fam.vector(0, 0).entries(), cubes.as_slice());
        assert_eq!(fam.bases().len(), 5);
        assert_eq!(build_alltop(&Field::prime(3).unwrap()).unwrap_err(), Error::CharacteristicTooSmall(3));
    }

    #[test]
    fn symplectic_parameters() {
        let gf27 = Field::new(3, 3, None).unwrap();
        let fam = build_symplectic(&gf27, 1).unwrap();
        assert_eq!(fam.bases().len(), 27);
        assert!(fam.bases().iter().all(|b| b.len() == 27));
        let distinct: BTreeSet<_> = fam.vectors().collect();
        assert_eq!(distinct.len(), 27 * 27);

        let gf9 = Field::new(3, 2, None).unwrap();
        assert!(matches!(build_symplectic(&gf9, 1), Err(Error::InvalidParameters(_))));
        assert!(check_symplectic_params(5, 2).is_ok());
        assert!(check_symplectic_params(5, 3).is_err());
        assert!(check_symplectic_params(9, 3).is_err());
        assert!(check_symplectic_params(3, 0).is_err());
        assert_eq!(default_symplectic_s(1), None);
        assert_eq!(default_symplectic_s(3), Some(1));
    }

    #[test]
    fn symplectic_bases_follow_the_quadratic_parameter() {
        use crate::verify::verify_orthonormal;
        let gf27 = Field::new(3, 3, None).unwrap();
        let fam = build_symplectic(&gf27, 1).unwrap();
        // basis 0 is the b = 0 basis: the pure characters tr(a·x)
        let x = gf27.element(5);
        for (ia, v) in fam.bases()[0].iter().enumerate() {
            let a = gf27.element(ia);
            assert_eq!(v.entries()[5] as u32, gf27.trace(gf27.mul(a, x)));
        }
        assert_eq!(verify_orthonormal(&fam.bases()[7]).unwrap(), Ok(()));
        // the transposed grouping mixes quadratic parts inside one basis
        let transposed: Vec<ExponentVector> = (0..27).map(|b| fam.vector(b, 7).clone()).collect();
        assert!(verify_orthonormal(&transposed).unwrap().is_err());
    }

    #[test]
    fn galois_ring_n1() {
        let ring = GaloisRing::new(1, None).unwrap();
        let fam = build_galois_ring(&ring);
        assert_eq!(rows(&fam, 0), vec![vec![0, 0], vec![0, 2]]);
        assert_eq!(rows(&fam, 1), vec![vec![0, 1], vec![0, 3]]);
    }

    #[test]
    fn galois_ring_counts() {
        let fam = build_galois_ring(&GaloisRing::new(3, None).unwrap());
        assert_eq!(fam.bases().len(), 8);
        assert!(fam.bases().iter().all(|b| b.len() == 8));
        assert_eq!(fam.root_order(), 4);
        let distinct: BTreeSet<_> = fam.vectors().collect();
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn build_dispatch() {
        let fam = build(&Construction::Planar { poly: None }, 3, 1, None).unwrap();
        assert_eq!(fam.bases().len(), 3);
        assert_eq!(fam.params().modulus, vec![0, 1]);
        assert_eq!(
            build(&Construction::Alltop, 3, 1, None).unwrap_err(),
            Error::CharacteristicTooSmall(3)
        );
        let rebuilt = Algebra::from_params(fam.params()).unwrap();
        assert!(matches!(rebuilt, Algebra::Field(ref f) if f.order() == 3));
    }
}
