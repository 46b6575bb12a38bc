use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::Result;

/// A length-`q` vector over `Z_m`, standing for `(ω_m^{e_x} / √q)_x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    modulus: u8,
    entries: Vec<u8>,
}

impl ExponentVector {
    pub fn new(modulus: u8, entries: Vec<u8>) -> Result<ExponentVector> {
        if modulus < 2 {
            return Err(Error::UnsupportedModulus(modulus));
        }
        if entries.iter().any(|&e| e >= modulus) {
            return Err(Error::MalformedFamily("exponent entry out of range"));
        }
        Ok(ExponentVector { modulus, entries })
    }

    pub(crate) fn from_raw(modulus: u8, entries: Vec<u8>) -> ExponentVector {
        debug_assert!(entries.iter().all(|&e| e < modulus));
        ExponentVector { modulus, entries }
    }

    pub fn zero(modulus: u8, len: usize) -> ExponentVector {
        ExponentVector { modulus, entries: alloc::vec![0; len] }
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `tr(aΠ(x) + bx)`; `poly` is `None` when `Π` was given as a bare table.
    Planar { poly: Option<Vec<u32>> },
    /// `tr((x+a)³ + b(x+a))`, `p ≥ 5`.
    Alltop,
    /// `tr(ax + b x^{p^{n−s}+1} + b^{p^s} x^{p^s+1})`, `n` odd.
    Symplectic { s: u32 },
    /// `tr((a+2b)x)` over the Teichmüller set of `GR(4, n)`, values in `Z_4`.
    GaloisRing,
}

impl Construction {
    pub fn tag(&self) -> &'static str {
        match self {
            Construction::Planar { .. } => "planar",
            Construction::Alltop => "alltop",
            Construction::Symplectic { .. } => "symplectic",
            Construction::GaloisRing => "galois-ring",
        }
    }

    pub fn is_odd(&self) -> bool {
        !matches!(self, Construction::GaloisRing)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Everything needed to rebuild a family: construction, characteristic,
/// degree and the defining polynomial of the underlying field or ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub construction: Construction,
    /// Field characteristic; 2 for the Galois-ring construction.
    pub p: u32,
    pub n: usize,
    /// Ascending coefficients over `Z_p` (or `Z_4` for Galois rings).
    pub modulus: Vec<u32>,
}

/// The `q` non-standard bases `V_a` of a complete set of `q + 1` MUBs.
///
/// `bases[a][b]` is `v_ab` with `a`, `b` and the entry positions following
/// the element enumeration of the underlying field or Teichmüller set. The
/// standard basis is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubFamily {
    params: FamilyParams,
    q: usize,
    m: u8,
    bases: Vec<Vec<ExponentVector>>,
}

impl MubFamily {
    /// Assembles a family from raw exponent rows, checking its shape.
    pub fn from_parts(params: FamilyParams, m: u8, bases: Vec<Vec<Vec<u8>>>) -> Result<MubFamily> {
        let q = bases.len();
        if q < 2 {
            return Err(Error::MalformedFamily("need at least two bases"));
        }
        let expected_m = if params.construction.is_odd() { params.p } else { 4 };
        if m as u32 != expected_m {
            return Err(Error::MalformedFamily("root order does not match the construction"));
        }
        let dim = if params.construction.is_odd() {
            crate::arith::checked_pow(params.p as u64, params.n)
        } else {
            crate::arith::checked_pow(2, params.n)
        };
        if dim != Some(q as u64) {
            return Err(Error::MalformedFamily("number of bases does not match p^n"));
        }
        let bases = bases
            .into_iter()
            .map(|basis| {
                if basis.len() != q {
                    return Err(Error::MalformedFamily("every basis needs q vectors"));
                }
                basis
                    .into_iter()
                    .map(|v| {
                        if v.len() != q {
                            return Err(Error::MalformedFamily("every vector needs q entries"));
                        }
                        ExponentVector::new(m, v)
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<ExponentVector>>>>()?;
        Ok(MubFamily { params, q, m, bases })
    }

    pub(crate) fn from_vectors(params: FamilyParams, m: u8, bases: Vec<Vec<ExponentVector>>) -> MubFamily {
        let q = bases.len();
        debug_assert!(bases.iter().all(|b| b.len() == q && b.iter().all(|v| v.len() == q)));
        MubFamily { params, q, m, bases }
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn construction(&self) -> &Construction {
        &self.params.construction
    }

    /// Dimension `q` of the ambient space.
    pub fn dimension(&self) -> usize {
        self.q
    }

    /// Root order `m`: `p` for field constructions, 4 for Galois rings.
    pub fn root_order(&self) -> u8 {
        self.m
    }

    pub fn bases(&self) -> &[Vec<ExponentVector>] {
        &self.bases
    }

    pub fn vector(&self, a: usize, b: usize) -> &ExponentVector {
        &self.bases[a][b]
    }

    /// The standard basis is always part of the complete set.
    pub fn includes_standard_basis(&self) -> bool {
        true
    }

    /// All `q²` non-standard vectors, ordered by `(a, b)`.
    pub fn vectors(&self) -> impl Iterator<Item = &ExponentVector> {
        self.bases.iter().flatten()
    }

    /// Corrupts one entry in place; for mutation tests.
    pub fn perturb(&mut self, a: usize, b: usize, x: usize, delta: u8) {
        let m = self.m;
        let e = &mut self.bases[a][b].entries[x];
        *e = (*e + delta % m) % m;
    }
}
