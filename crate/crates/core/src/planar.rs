use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::Result;

/// A function `F → F` stored as a value table indexed by packed element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarFunction {
    table: Vec<FieldElement>,
    poly: Option<Vec<u32>>,
}

impl PlanarFunction {
    /// `Π(x) = Σ coeffs[i]·x^i` with coefficients in the prime subfield.
    pub fn from_polynomial(field: &Field, coeffs: &[u32]) -> Result<PlanarFunction> {
        let p = field.characteristic();
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameters("polynomial coefficient out of range"));
        }
        let mut table = alloc::vec![FieldElement::ZERO; field.order() as usize];
        for &x in field.elements() {
            let mut acc = FieldElement::ZERO;
            for &c in coeffs.iter().rev() {
                acc = field.add(field.mul(acc, x), field.from_int(c as i64));
            }
            table[x.packed() as usize] = acc;
        }
        Ok(PlanarFunction { table, poly: Some(coeffs.to_vec()) })
    }

    /// `Π(x) = x²`.
    pub fn square(field: &Field) -> PlanarFunction {
        PlanarFunction::from_polynomial(field, &[0, 0, 1]).expect("coefficients are in range")
    }

    /// Wraps an explicit value table (one entry per packed element).
    pub fn from_table(field: &Field, table: Vec<FieldElement>) -> Result<PlanarFunction> {
        if table.len() != field.order() as usize {
            return Err(Error::LengthMismatch { left: table.len(), right: field.order() as usize });
        }
        if table.iter().any(|v| v.packed() >= field.order()) {
            return Err(Error::InvalidParameters("table value outside the field"));
        }
        Ok(PlanarFunction { table, poly: None })
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.table[x.packed() as usize]
    }

    /// Polynomial coefficients, when the function was built from one.
    pub fn polynomial(&self) -> Option<&[u32]> {
        self.poly.as_deref()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    /// The difference map for this shift is not a bijection.
    NotPlanar { shift: FieldElement },
}

/// Brute-force planarity test: `x ↦ Π(x+a) − Π(x)` must be a bijection for
/// every `a ≠ 0`.
pub fn planar_check(field: &Field, pi: &PlanarFunction) -> Planarity {
    let q = field.order() as usize;
    let mut seen = alloc::vec![u32::MAX; q];
    for (tag, &a) in field.elements().iter().enumerate().skip(1) {
        for &x in field.elements() {
            let d = field.sub(pi.eval(field.add(x, a)), pi.eval(x));
            let slot = &mut seen[d.packed() as usize];
            if *slot == tag as u32 {
                return Planarity::NotPlanar { shift: a };
            }
            *slot = tag as u32;
        }
    }
    Planarity::Planar
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_planar() {
        for (p, n) in [(3, 1), (5, 1), (3, 2), (7, 1), (3, 3)] {
            let f = Field::new(p, n, None).unwrap();
            assert_eq!(planar_check(&f, &PlanarFunction::square(&f)), Planarity::Planar);
        }
    }

    #[test]
    fn cube_over_z3_is_not_planar() {
        let f = Field::prime(3).unwrap();
        let cube = PlanarFunction::from_polynomial(&f, &[0, 0, 0, 1]).unwrap();
        // x^3 = x on Z_3: every difference map is constant
        for a in 1..3u32 {
            let diffs: Vec<u32> = (0..3u32).map(|x| ((x + a).pow(3) % 3 + 3 - x.pow(3) % 3) % 3).collect();
            assert!(diffs.iter().all(|&d| d == diffs[0]));
        }
        assert_eq!(planar_check(&f, &cube), Planarity::NotPlanar { shift: FieldElement::ONE });
    }

    #[test]
    fn identity_is_not_planar() {
        for (p, n) in [(5, 1), (3, 2)] {
            let f = Field::new(p, n, None).unwrap();
            let id = PlanarFunction::from_polynomial(&f, &[0, 1]).unwrap();
            assert!(matches!(planar_check(&f, &id), Planarity::NotPlanar { .. }));
        }
    }

    #[test]
    fn table_length_checked() {
        let f = Field::prime(5).unwrap();
        assert!(PlanarFunction::from_table(&f, alloc::vec![FieldElement::ZERO; 4]).is_err());
    }
}
