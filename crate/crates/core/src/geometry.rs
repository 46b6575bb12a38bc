//! Points of `PG(d−1, p)` and `PHG(d−1, Z_4)`, neighbourhoods, and point
//! censuses of exponent sets.
//!
//! A PG point is the orbit of a nonzero vector under `Z_p^*`; its canonical
//! representative has first nonzero entry 1. A PHG point is the orbit of a
//! vector with at least one unit entry under the units `{1, 3}` of `Z_4`; its
//! canonical representative has first unit entry 1. Two PHG points are
//! neighbours when their reductions mod 2 are the same point of `PG(d−1, 2)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::arith::{inv_mod_prime, is_prime};
use crate::audit::{module_rank, ExponentSet};
use crate::error::Error;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    /// Projective geometry over a prime field.
    Pg,
    /// Projective Hjelmslev geometry over `Z_4`.
    Phg,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    kind: PointKind,
    modulus: u8,
    rep: Vec<u8>,
}

impl ProjectivePoint {
    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    /// Canonical coordinates.
    pub fn rep(&self) -> &[u8] {
        &self.rep
    }
}

fn check_kind(kind: PointKind, m: u8) -> Result<()> {
    match kind {
        PointKind::Pg if is_prime(m as u32) => Ok(()),
        PointKind::Phg if m == 4 => Ok(()),
        _ => Err(Error::UnsupportedModulus(m)),
    }
}

/// Scales `v` so that its first nonzero (PG) or first unit (PHG) entry is 1.
pub fn canonicalize(v: &[u8], m: u8, kind: PointKind) -> Result<ProjectivePoint> {
    check_kind(kind, m)?;
    if v.iter().any(|&e| e >= m) {
        return Err(Error::InvalidParameters("coordinate out of range"));
    }
    let scale = match kind {
        PointKind::Pg => {
            let lead = *v.iter().find(|&&e| e != 0).ok_or(Error::ZeroVector)?;
            inv_mod_prime(lead as u32, m as u32)
        }
        // units of Z_4 are 1 and 3, each its own inverse
        PointKind::Phg => *v.iter().find(|&&e| e % 2 == 1).ok_or(Error::NoUnitEntry)? as u32,
    };
    let rep = v.iter().map(|&e| ((e as u32 * scale) % m as u32) as u8).collect();
    Ok(ProjectivePoint { kind, modulus: m, rep })
}

/// Number of vectors representing one point: `p − 1` in PG, 2 in PHG.
pub fn representative_count(kind: PointKind, m: u8) -> Result<u64> {
    check_kind(kind, m)?;
    Ok(match kind {
        PointKind::Pg => m as u64 - 1,
        PointKind::Phg => 2,
    })
}

/// Neighbourhood of a PHG point: its reduction mod 2 as a point of `PG(d−1, 2)`.
pub fn neighbourhood_class(point: &ProjectivePoint) -> Result<ProjectivePoint> {
    if point.kind != PointKind::Phg {
        return Err(Error::InvalidParameters("neighbourhoods are defined for PHG points"));
    }
    let reduced: Vec<u8> = point.rep.iter().map(|e| e % 2).collect();
    canonicalize(&reduced, 2, PointKind::Pg)
}

/// The odd counting identity `(p−1)·(p^{2n}−1)/(p−1) + 1 = p^{2n} = q²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgCountIdentity {
    pub p: u64,
    pub n: usize,
    /// Points of a `(2n−1)`-dimensional subspace, `(p^{2n}−1)/(p−1)`.
    pub points: u64,
    /// `(p−1)·points + 1`.
    pub vectors_with_zero: u64,
    /// Non-standard vectors of a complete set in dimension `q = p^n`, i.e. `q²`.
    pub family_vectors: u64,
    pub holds: bool,
}

pub fn pg_count_identity(p: u64, n: usize) -> PgCountIdentity {
    let q = p.pow(n as u32);
    let total = p.pow(2 * n as u32);
    let points = (total - 1) / (p - 1);
    let vectors_with_zero = (p - 1) * points + 1;
    PgCountIdentity {
        p,
        n,
        points,
        vectors_with_zero,
        family_vectors: q * q,
        holds: vectors_with_zero == total && total == q * q,
    }
}

/// The even counting identity, with `k = n − 1`:
/// `2·2^k·(2^{k+1}−1)` point vectors plus the non-unit vectors should give
/// the `4^n` non-standard vectors. The usual statement adds `2^n` non-unit
/// vectors, its proof adds `2^k`; both totals are reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhgCountIdentity {
    pub n: usize,
    pub points_per_neighbourhood: u64,
    pub neighbourhoods: u64,
    /// `2 · 2^k · (2^{k+1} − 1)`.
    pub point_vectors: u64,
    pub target: u64,
    /// `point_vectors + 2^n`.
    pub statement_total: u64,
    /// `point_vectors + 2^k`.
    pub proof_total: u64,
    pub statement_holds: bool,
    pub proof_holds: bool,
}

pub fn phg_count_identity(n: usize) -> PhgCountIdentity {
    assert!(n >= 1);
    let k = n as u32 - 1;
    let points_per_neighbourhood = 1u64 << k;
    let neighbourhoods = (1u64 << (k + 1)) - 1;
    let point_vectors = 2 * points_per_neighbourhood * neighbourhoods;
    let target = 1u64 << (2 * n);
    let statement_total = point_vectors + (1 << n);
    let proof_total = point_vectors + (1 << k);
    PhgCountIdentity {
        n,
        points_per_neighbourhood,
        neighbourhoods,
        point_vectors,
        target,
        statement_total,
        proof_total,
        statement_holds: statement_total == target,
        proof_holds: proof_total == target,
    }
}

/// Point census of an exponent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub kind: PointKind,
    /// Size of the set.
    pub vectors: usize,
    /// Vectors that represent points (nonzero for PG, with a unit entry for PHG).
    pub point_vectors: usize,
    /// Vectors left out: the zero vector (PG) or the non-unit vectors (PHG).
    pub excluded_vectors: usize,
    pub points: usize,
    /// Smallest and largest number of set vectors over one point.
    pub representatives: (usize, usize),
    /// Number of distinct neighbourhoods (PHG only).
    pub neighbourhoods: Option<usize>,
    /// Smallest and largest number of points in a neighbourhood (PHG only).
    pub points_per_neighbourhood: Option<(usize, usize)>,
    /// Rank of the set as a module (free rank for PHG).
    pub rank: usize,
    /// Point count a subspace of this rank must have.
    pub expected_points: u64,
    /// Every structural count matches its formula.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    /// Canonical representatives, sorted.
    pub points: Vec<ProjectivePoint>,
    pub census: Census,
}

/// Canonicalizes every point-representing vector of a module and checks
/// the counts against the subspace formulas.
pub fn subspace_points(set: &ExponentSet) -> Result<PointSet> {
    let m = set.modulus();
    let rank = module_rank(set)?;
    let kind = if m == 4 { PointKind::Phg } else { PointKind::Pg };
    check_kind(kind, m)?;

    let mut orbits: BTreeMap<ProjectivePoint, usize> = BTreeMap::new();
    let mut excluded = 0;
    for v in set.iter() {
        match canonicalize(v, m, kind) {
            Ok(pt) => *orbits.entry(pt).or_insert(0) += 1,
            Err(Error::ZeroVector | Error::NoUnitEntry) => excluded += 1,
            Err(e) => return Err(e),
        }
    }
    let point_vectors = set.len() - excluded;
    let representatives = (
        orbits.values().copied().min().unwrap_or(0),
        orbits.values().copied().max().unwrap_or(0),
    );
    let reps = representative_count(kind, m)? as usize;
    let points = orbits.len();

    let (neighbourhoods, per_neighbourhood, expected_points, consistent) = match kind {
        PointKind::Pg => {
            let r = rank.free_rank as u32;
            let p = m as u64;
            let expected = (p.pow(r) - 1) / (p - 1);
            let identity = (p - 1) * points as u64 + 1 == set.len() as u64;
            let ok = points as u64 == expected
                && identity
                && excluded == 1
                && (points == 0 || representatives == (reps, reps));
            (None, None, expected, ok)
        }
        PointKind::Phg => {
            let mut classes: BTreeMap<ProjectivePoint, usize> = BTreeMap::new();
            for pt in orbits.keys() {
                *classes.entry(neighbourhood_class(pt)?).or_insert(0) += 1;
            }
            let per = (
                classes.values().copied().min().unwrap_or(0),
                classes.values().copied().max().unwrap_or(0),
            );
            let r = rank.free_rank as u32;
            let expected = if r == 0 { 0 } else { (1u64 << (r - 1)) * ((1u64 << r) - 1) };
            let ok = rank.is_free()
                && points as u64 == expected
                && classes.len() as u64 == (1u64 << r) - 1
                && (r == 0 || per == (1 << (r - 1), 1 << (r - 1)))
                && excluded as u64 == 1u64 << r
                && (points == 0 || representatives == (reps, reps));
            (Some(classes.len()), Some(per), expected, ok)
        }
    };

    let census = Census {
        kind,
        vectors: set.len(),
        point_vectors,
        excluded_vectors: excluded,
        points,
        representatives,
        neighbourhoods,
        points_per_neighbourhood: per_neighbourhood,
        rank: rank.free_rank,
        expected_points,
        consistent,
    };
    Ok(PointSet { points: orbits.into_keys().collect(), census })
}

/// Distinct canonical points among all vectors of `Z_m^d` (small `d` only).
pub fn all_points(d: usize, m: u8, kind: PointKind) -> Result<BTreeSet<ProjectivePoint>> {
    check_kind(kind, m)?;
    let total = (m as u64).pow(d as u32);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut v = Vec::with_capacity(d);
        let mut c = code;
        for _ in 0..d {
            v.push((c % m as u64) as u8);
            c /= m as u64;
        }
        if let Ok(pt) = canonicalize(&v, m, kind) {
            out.insert(pt);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&[0, 2, 1], 3, PointKind::Pg).unwrap().rep(), &[0, 1, 2]);
        assert_eq!(canonicalize(&[2, 3, 1], 4, PointKind::Phg).unwrap().rep(), &[2, 1, 3]);
        assert_eq!(canonicalize(&[0, 2, 2], 4, PointKind::Phg).unwrap_err(), Error::NoUnitEntry);
        assert_eq!(canonicalize(&[0, 0], 5, PointKind::Pg).unwrap_err(), Error::ZeroVector);
        assert_eq!(canonicalize(&[1], 4, PointKind::Pg).unwrap_err(), Error::UnsupportedModulus(4));
    }

    #[test]
    fn representative_counts() {
        assert_eq!(representative_count(PointKind::Pg, 3).unwrap(), 2);
        assert_eq!(representative_count(PointKind::Pg, 7).unwrap(), 6);
        assert_eq!(representative_count(PointKind::Phg, 4).unwrap(), 2);
    }

    #[test]
    fn orbits_canonicalize_together() {
        for (m, kind) in [(3u8, PointKind::Pg), (5, PointKind::Pg), (4, PointKind::Phg)] {
            let units: Vec<u8> = (1..m).filter(|&r| kind == PointKind::Pg || r % 2 == 1).collect();
            for code in 0..(m as u32).pow(3) {
                let v: Vec<u8> = (0..3).map(|i| ((code / (m as u32).pow(i)) % m as u32) as u8).collect();
                let Ok(pt) = canonicalize(&v, m, kind) else { continue };
                assert_eq!(canonicalize(pt.rep(), m, kind).unwrap(), pt);
                let mut orbit = BTreeSet::new();
                for &r in &units {
                    let w: Vec<u8> = v.iter().map(|&e| ((e as u32 * r as u32) % m as u32) as u8).collect();
                    assert_eq!(canonicalize(&w, m, kind).unwrap(), pt);
                    orbit.insert(w);
                }
                assert_eq!(orbit.len() as u64, representative_count(kind, m).unwrap());
            }
        }
    }

    #[test]
    fn neighbourhoods() {
        let a = canonicalize(&[1, 0], 4, PointKind::Phg).unwrap();
        let b = canonicalize(&[1, 2], 4, PointKind::Phg).unwrap();
        let c = canonicalize(&[1, 1], 4, PointKind::Phg).unwrap();
        assert_eq!(neighbourhood_class(&a).unwrap(), neighbourhood_class(&b).unwrap());
        assert_ne!(neighbourhood_class(&a).unwrap(), neighbourhood_class(&c).unwrap());
        let pg = canonicalize(&[1, 0], 3, PointKind::Pg).unwrap();
        assert!(neighbourhood_class(&pg).is_err());
    }

    #[test]
    fn phg_line_census() {
        // Z_4^2: 12 vectors with a unit entry, 6 points, 3 neighbourhoods of 2.
        let pts = all_points(2, 4, PointKind::Phg).unwrap();
        assert_eq!(pts.len(), 6);
        let mut classes: BTreeMap<ProjectivePoint, usize> = BTreeMap::new();
        for pt in &pts {
            *classes.entry(neighbourhood_class(pt).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(classes.len(), 3);
        assert!(classes.values().all(|&c| c == 2));
        let unit_vectors = (0..16u8).filter(|c| (c % 4) % 2 == 1 || (c / 4) % 2 == 1).count();
        assert_eq!(unit_vectors, 12);
    }

    #[test]
    fn pg_identity() {
        let id = pg_count_identity(3, 1);
        assert_eq!((id.points, id.vectors_with_zero, id.family_vectors), (4, 9, 9));
        assert!(id.holds);
        let id = pg_count_identity(5, 2);
        assert_eq!(id.vectors_with_zero, 625);
        assert!(id.holds);
    }

    #[test]
    fn phg_identity() {
        let id = phg_count_identity(1);
        assert_eq!((id.point_vectors, id.statement_total, id.target), (2, 4, 4));
        assert!(id.statement_holds);
        let id = phg_count_identity(2);
        assert_eq!((id.point_vectors, id.statement_total, id.proof_total), (12, 16, 14));
        assert!(id.statement_holds && !id.proof_holds);
        for n in 1..=6 {
            assert!(phg_count_identity(n).statement_holds);
        }
        assert_eq!(phg_count_identity(2).points_per_neighbourhood, 2);
    }

    #[test]
    fn planar_z3_points() {
        // the 9 vectors (bx + a x^2) over Z_3 span Z_3^3 restricted to rank 2
        let mut set = ExponentSet::new(3, 3);
        for a in 0..3u8 {
            for b in 0..3u8 {
                set.insert((0..3u8).map(|x| (a * x * x + b * x) % 3).collect());
            }
        }
        let ps = subspace_points(&set).unwrap();
        assert_eq!(ps.census.points, 4);
        assert_eq!(ps.census.expected_points, 4);
        assert!(ps.census.consistent);
        assert_eq!(ps.census.representatives, (2, 2));
    }

    #[test]
    fn non_module_rejected() {
        let mut set = ExponentSet::new(3, 2);
        set.insert(vec![0, 0]);
        set.insert(vec![0, 1]);
        assert_eq!(subspace_points(&set).unwrap_err(), Error::NotAModule);
    }
}
