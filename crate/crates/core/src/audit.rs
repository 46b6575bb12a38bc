//! Module and subspace structure of the exponent sets of a family.
//!
//! Componentwise multiplication of unit-modulus vectors, renormalized, is
//! addition of exponent vectors; conjugating the second factor subtracts.
//! Scalar action `r ⋆ v` is multiplication of the exponents by `r ∈ Z_m`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::construct::{build_planar, Algebra};
use crate::error::Error;
use crate::family::{Construction, ExponentVector, MubFamily};
use crate::field::Field;
use crate::geometry::{pg_count_identity, phg_count_identity, subspace_points, PointSet};
use crate::planar::PlanarFunction;
use crate::ring::GaloisRing;
use crate::Result;

/// A set of exponent vectors of common length over `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    modulus: u8,
    len: usize,
    vectors: BTreeSet<Vec<u8>>,
}

impl ExponentSet {
    pub fn new(modulus: u8, len: usize) -> ExponentSet {
        ExponentSet { modulus, len, vectors: BTreeSet::new() }
    }

    /// The `q²` exponent vectors `M` of a family.
    pub fn from_family(f: &MubFamily) -> ExponentSet {
        let mut set = ExponentSet::new(f.root_order(), f.dimension());
        for v in f.vectors() {
            set.vectors.insert(v.entries().to_vec());
        }
        set
    }

    pub fn insert(&mut self, v: Vec<u8>) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        assert!(v.iter().all(|&e| e < self.modulus), "entry out of range");
        self.vectors.insert(v)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.vectors.contains(v)
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    /// Length of each vector.
    pub fn dimension(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vectors in ascending lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.vectors.iter()
    }

    pub fn is_subset(&self, other: &ExponentSet) -> bool {
        self.vectors.is_subset(&other.vectors)
    }

    /// Elements of `self` missing from `other`.
    pub fn difference<'a>(&'a self, other: &'a ExponentSet) -> impl Iterator<Item = &'a Vec<u8>> {
        self.vectors.difference(&other.vectors)
    }
}

/// `u ⊙̂ v` (or `u ⊙̂ v*`): entrywise `u_x ± v_x mod m`.
pub fn hat_product(u: &ExponentVector, v: &ExponentVector, conjugate_second: bool) -> Result<ExponentVector> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    if u.modulus() != v.modulus() {
        return Err(Error::ModulusMismatch { left: u.modulus(), right: v.modulus() });
    }
    let m = u.modulus();
    let entries = if conjugate_second {
        combine(u.entries(), v.entries(), m, true)
    } else {
        combine(u.entries(), v.entries(), m, false)
    };
    Ok(ExponentVector::from_raw(m, entries))
}

fn combine(u: &[u8], v: &[u8], m: u8, subtract: bool) -> Vec<u8> {
    u.iter()
        .zip(v)
        .map(|(&a, &b)| if subtract { (a + m - b) % m } else { (a + b) % m })
        .collect()
}

fn scale(v: &[u8], r: u8, m: u8) -> Vec<u8> {
    v.iter().map(|&e| ((e as u32 * r as u32) % m as u32) as u8).collect()
}

fn is_unit(e: u8, m: u8) -> bool {
    if m == 4 {
        e % 2 == 1
    } else {
        e != 0
    }
}

/// The derived sets of a family.
///
/// `differences` is `M' = {x − y}`, the exponent form of `N' = {u ⊙̂ v*}`.
/// `phase_classes` is `M'` with every vector shifted so that its first entry
/// is 0, i.e. `N'` modulo a global phase. `non_units` is `U'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSets {
    pub differences: ExponentSet,
    pub phase_classes: ExponentSet,
    pub non_units: ExponentSet,
}

pub fn derive_sets(f: &MubFamily) -> DerivedSets {
    let m = f.root_order();
    let q = f.dimension();
    let vectors: Vec<&[u8]> = f.vectors().map(|v| v.entries()).collect();
    let mut differences = ExponentSet::new(m, q);
    for u in &vectors {
        for v in &vectors {
            differences.vectors.insert(combine(u, v, m, true));
        }
    }
    let mut phase_classes = ExponentSet::new(m, q);
    let mut non_units = ExponentSet::new(m, q);
    for v in differences.iter() {
        let shift = v[0];
        phase_classes.vectors.insert(v.iter().map(|&e| (e + m - shift) % m).collect());
        if v.iter().all(|&e| !is_unit(e, m)) {
            non_units.vectors.insert(v.clone());
        }
    }
    DerivedSets { differences, phase_classes, non_units }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Closure,
    Identity,
    Inverses,
    ScalarAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    /// Offending vectors: `(u, v)` for closure, `u` otherwise.
    pub witness: Vec<Vec<u8>>,
    /// The scalar for scalar-action failures.
    pub scalar: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCheck {
    pub closure: bool,
    pub identity: bool,
    pub inverses: bool,
    pub scalar_action: bool,
    /// First witness for each failing axiom.
    pub failures: Vec<AxiomFailure>,
}

impl ModuleCheck {
    pub fn passed(&self) -> bool {
        self.closure && self.identity && self.inverses && self.scalar_action
    }
}

/// Exhaustively checks that a set is a `Z_m`-submodule of `Z_m^q`.
pub fn module_axioms_check(set: &ExponentSet) -> ModuleCheck {
    let m = set.modulus;
    let mut failures = Vec::new();

    let zero = vec![0u8; set.len];
    let identity = set.contains(&zero);
    if !identity {
        failures.push(AxiomFailure { axiom: Axiom::Identity, witness: Vec::new(), scalar: None });
    }

    let closure_witness = set.iter().find_map(|u| {
        set.iter()
            .find(|v| !set.contains(&combine(u, v, m, false)))
            .map(|v| vec![u.clone(), v.clone()])
    });
    let closure = closure_witness.is_none();
    if let Some(witness) = closure_witness {
        failures.push(AxiomFailure { axiom: Axiom::Closure, witness, scalar: None });
    }

    let inverse_witness = set.iter().find(|u| !set.contains(&combine(&zero, u, m, true)));
    let inverses = inverse_witness.is_none();
    if let Some(u) = inverse_witness {
        failures.push(AxiomFailure { axiom: Axiom::Inverses, witness: vec![u.clone()], scalar: None });
    }

    let scalar_witness = (0..m).find_map(|r| {
        set.iter().find(|u| !set.contains(&scale(u, r, m))).map(|u| (r, u.clone()))
    });
    let scalar_action = scalar_witness.is_none();
    if let Some((r, u)) = scalar_witness {
        failures.push(AxiomFailure { axiom: Axiom::ScalarAction, witness: vec![u], scalar: Some(r) });
    }

    ModuleCheck { closure, identity, inverses, scalar_action, failures }
}

/// Invariant profile of a finite `Z_m`-module: `Z_m^{free_rank} ⊕ Z_2^{torsion_rank}`
/// (the second part only occurs for `m = 4`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleRank {
    pub free_rank: usize,
    pub torsion_rank: usize,
}

impl ModuleRank {
    pub fn is_free(&self) -> bool {
        self.torsion_rank == 0
    }

    /// Number of elements of a module with this profile.
    pub fn order(&self, m: u8) -> Option<u64> {
        let big = crate::arith::checked_pow(m as u64, self.free_rank)?;
        big.checked_mul(crate::arith::checked_pow(2, self.torsion_rank)?)
    }
}

/// Rank of a module: Gaussian elimination over `Z_p`, or invariant factors
/// over `Z_4` computed with unimodular row and column operations.
pub fn module_rank(set: &ExponentSet) -> Result<ModuleRank> {
    if !module_axioms_check(set).passed() {
        return Err(Error::NotAModule);
    }
    let rows: Vec<Vec<u8>> = set.iter().cloned().collect();
    match set.modulus {
        4 => Ok(z4_invariants(rows, set.len)),
        m if crate::arith::is_prime(m as u32) => {
            Ok(ModuleRank { free_rank: rank_mod_prime(rows, set.len, m), torsion_rank: 0 })
        }
        m => Err(Error::UnsupportedModulus(m)),
    }
}

fn rank_mod_prime(mut rows: Vec<Vec<u8>>, cols: usize, p: u8) -> usize {
    let p32 = p as u32;
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = crate::arith::inv_mod_prime(rows[rank][c] as u32, p32);
        let pivot_row: Vec<u32> = rows[rank].iter().map(|&e| e as u32 * inv % p32).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c] as u32;
            for (e, &pv) in row.iter_mut().zip(&pivot_row) {
                *e = ((*e as u32 + p32 * p32 - f * pv) % p32) as u8;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn z4_invariants(mut rows: Vec<Vec<u8>>, cols: usize) -> ModuleRank {
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut r = 0;
    // unit pivots give Z_4 summands
    loop {
        let pivot = (r..rows.len()).find_map(|i| {
            (r..cols).find(|&j| rows[i][col_perm[j]] % 2 == 1).map(|j| (i, j))
        });
        let Some((i, j)) = pivot else { break };
        rows.swap(r, i);
        col_perm.swap(r, j);
        let c = col_perm[r];
        let inv = rows[r][c]; // 1 and 3 are self-inverse
        let pivot_row: Vec<u8> = rows[r].iter().map(|&e| (e * inv) % 4).collect();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (e, &pv) in row.iter_mut().zip(&pivot_row) {
                *e = (*e + 16 - f * pv) % 4;
            }
        }
        // column operations clear the rest of the pivot row; they touch no other row
        rows[r] = vec![0; cols];
        rows[r][c] = 1;
        r += 1;
    }
    // what remains is 2·(matrix over Z_2); its Z_2-rank counts the Z_2 summands
    let rest: Vec<Vec<u8>> = rows[r..]
        .iter()
        .map(|row| (r..cols).map(|j| row[col_perm[j]] / 2).collect())
        .collect();
    let torsion_rank = rank_mod_prime(rest, cols - r, 2);
    ModuleRank { free_rank: r, torsion_rank }
}

/// A `Z_4`-module is free iff every element killed by 2 is twice an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free,
    /// A 2-torsion element with no half in the set.
    NotFree { witness: Vec<u8> },
}

pub fn free_check(set: &ExponentSet) -> Result<Freeness> {
    if set.modulus != 4 {
        return Err(Error::UnsupportedModulus(set.modulus));
    }
    let doubles: BTreeSet<Vec<u8>> = set.iter().map(|u| scale(u, 2, 4)).collect();
    let witness = set
        .iter()
        .filter(|v| v.iter().all(|&e| (2 * e) % 4 == 0))
        .find(|v| !doubles.contains(*v));
    Ok(match witness {
        Some(v) => Freeness::NotFree { witness: v.clone() },
        None => Freeness::Free,
    })
}

/// Exact check that every Alltop difference `v_ab ⊙̂ v*_cd` equals
/// `tr(αx² + βx + γ)` with `α = 3(a−c)`, `β = 3(a²−c²) + b − d`,
/// `γ = a³ − c³ + ab − cd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticBridge {
    pub pairs_checked: u64,
    pub mismatches: u64,
    /// `((a, b), (c, d))` as enumeration indices.
    pub first_mismatch: Option<((usize, usize), (usize, usize))>,
    /// Over a prime field: every phase class, interpolated from its values at
    /// `x = 0, 1, 2`, agrees with the interpolating quadratic everywhere.
    pub interpolation: Option<bool>,
    /// Phase classes coincide with the exponent set of the planar family for `x²`.
    pub matches_planar_square: bool,
}

pub fn alltop_quadratic_bridge(f: &MubFamily, field: &Field) -> Result<QuadraticBridge> {
    if *f.construction() != Construction::Alltop {
        return Err(Error::InvalidParameters("bridge applies to the cubic construction"));
    }
    let q = f.dimension();
    let elems = field.elements();
    let three = field.from_int(3);
    let mut pairs_checked = 0;
    let mut mismatches = 0;
    let mut first_mismatch = None;
    let mut expected = vec![0u8; q];
    let mut diff = vec![0u8; q];
    let m = f.root_order();
    for (ia, &a) in elems.iter().enumerate() {
        for (ib, &b) in elems.iter().enumerate() {
            let u = f.vector(ia, ib).entries();
            for (ic, &c) in elems.iter().enumerate() {
                let alpha = field.mul(three, field.sub(a, c));
                let a2c2 = field.sub(field.mul(a, a), field.mul(c, c));
                let a3c3 = field.sub(field.pow(a, 3), field.pow(c, 3));
                for (id, &d) in elems.iter().enumerate() {
                    let beta = field.add(field.mul(three, a2c2), field.sub(b, d));
                    let gamma = field.add(a3c3, field.sub(field.mul(a, b), field.mul(c, d)));
                    for (slot, &x) in expected.iter_mut().zip(elems) {
                        let t = field.add(field.mul(alpha, field.mul(x, x)), field.add(field.mul(beta, x), gamma));
                        *slot = field.trace(t) as u8;
                    }
                    let v = f.vector(ic, id).entries();
                    for ((o, &s), &t) in diff.iter_mut().zip(u).zip(v) {
                        *o = (s + m - t) % m;
                    }
                    pairs_checked += 1;
                    if diff != expected {
                        mismatches += 1;
                        first_mismatch.get_or_insert(((ia, ib), (ic, id)));
                    }
                }
            }
        }
    }

    let derived = derive_sets(f);
    let interpolation = (field.degree() == 1).then(|| {
        let p = field.characteristic() as i64;
        let inv2 = (p + 1) / 2;
        derived.phase_classes.iter().all(|v| {
            // e(x) = αx² + βx with e(0) = 0
            let (e1, e2) = (v[1] as i64, v[2] as i64);
            let alpha = ((e2 - 2 * e1) * inv2).rem_euclid(p);
            let beta = (e1 - alpha).rem_euclid(p);
            v.iter().enumerate().all(|(x, &e)| {
                let x = x as i64;
                (alpha * x * x + beta * x).rem_euclid(p) == e as i64
            })
        })
    });

    let planar = build_planar(field, &PlanarFunction::square(field))?;
    let matches_planar_square = derived.phase_classes == ExponentSet::from_family(&planar);

    Ok(QuadraticBridge { pairs_checked, mismatches, first_mismatch, interpolation, matches_planar_square })
}

/// Checks `r ⋆ v_ab = v_{(ra)(rb)}` (field constructions other than the
/// cubic one) or `r ⋆ v_α = v_{rα}` (Galois ring) for every `r` and vector.
pub fn scalar_action_lookup(f: &MubFamily, algebra: &Algebra) -> Option<bool> {
    let m = f.root_order();
    let q = f.dimension();
    match (f.construction(), algebra) {
        (Construction::Planar { .. } | Construction::Symplectic { .. }, Algebra::Field(field)) => {
            Some((0..m).all(|r| {
                let r_el = field.from_int(r as i64);
                (0..q).all(|ia| {
                    (0..q).all(|ib| {
                        let ja = field.index_of(field.mul(r_el, field.element(ia)));
                        let jb = field.index_of(field.mul(r_el, field.element(ib)));
                        scale(f.vector(ia, ib).entries(), r, m) == f.vector(ja, jb).entries()
                    })
                })
            }))
        }
        (Construction::GaloisRing, Algebra::Ring(ring)) => Some(ring_scalar_lookup(f, ring)),
        _ => None,
    }
}

fn ring_scalar_lookup(f: &MubFamily, ring: &GaloisRing) -> bool {
    let t = ring.teichmuller();
    (0..4u8).all(|r| {
        t.iter().enumerate().all(|(ia, &a)| {
            t.iter().enumerate().all(|(ib, &b)| {
                let alpha = ring.scale(r, ring.add(a, ring.scale(2, b)));
                let (a2, b2) = ring.two_adic(alpha);
                let (Some(ja), Some(jb)) = (ring.teichmuller_index(a2), ring.teichmuller_index(b2)) else {
                    return false;
                };
                scale(f.vector(ia, ib).entries(), r, 4) == f.vector(ja, jb).entries()
            })
        })
    })
}

/// Which set the module and geometry checks ran on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorkingSet {
    /// The family's own exponent set `M`.
    Family,
    /// `M'` modulo global phase; used for the cubic construction.
    PhaseClasses,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub construction: Construction,
    pub q: usize,
    pub m: u8,
    pub n: usize,
    /// Module axioms on the family's own exponent set `M`.
    pub family_module: ModuleCheck,
    pub derived_size: usize,
    pub phase_class_count: usize,
    pub non_unit_count: usize,
    /// `M' = M`.
    pub idempotent: bool,
    pub working_set: WorkingSet,
    pub closure: bool,
    pub identity_present: bool,
    pub inverses: bool,
    pub scalar_action_closed: bool,
    pub module_failures: Vec<AxiomFailure>,
    pub rank: Option<ModuleRank>,
    /// `Some` for `Z_4` only.
    pub free: Option<Freeness>,
    pub vector_count: usize,
    pub projective_dimension: Option<i64>,
    /// The projective dimension usually stated for this construction.
    pub stated_projective_dimension: i64,
    pub scalar_lookup: Option<bool>,
    pub bridge: Option<QuadraticBridge>,
    pub points: Option<PointSet>,
    pub pg_identity: Option<crate::geometry::PgCountIdentity>,
    pub phg_identity: Option<crate::geometry::PhgCountIdentity>,
    /// Differences between computed structure and stated figures.
    pub discrepancies: Vec<String>,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// Runs the derived-set, module, rank, freeness and geometry checks.
pub fn audit_family(f: &MubFamily) -> Result<AuditReport> {
    let algebra = Algebra::from_params(f.params())?;
    let q = f.dimension();
    let m = f.root_order();
    let n = f.params().n;
    let construction = f.construction().clone();

    let family_set = ExponentSet::from_family(f);
    let family_module = module_axioms_check(&family_set);
    let derived = derive_sets(f);
    let idempotent = derived.differences == family_set;

    let mut notes = Vec::new();
    let mut discrepancies = Vec::new();

    let (working_set, working) = if construction == Construction::Alltop {
        notes.push(format!(
            "raw difference set has {} vectors; differences carry a global phase tr(γ), so the module is taken modulo phase ({} classes)",
            derived.differences.len(),
            derived.phase_classes.len()
        ));
        (WorkingSet::PhaseClasses, derived.phase_classes.clone())
    } else {
        (WorkingSet::Family, family_set)
    };

    let module = module_axioms_check(&working);
    let rank = module.passed().then(|| module_rank(&working)).transpose()?;
    let free = if m == 4 { Some(free_check(&working)?) } else { None };
    let projective_dimension = rank.map(|r| r.free_rank as i64 - 1);
    let stated_projective_dimension = if construction.is_odd() {
        2 * n as i64 - 1
    } else {
        1i64 << (n - 1)
    };

    let points = if module.passed() { Some(subspace_points(&working)?) } else { None };

    let bridge = match (&construction, &algebra) {
        (Construction::Alltop, Algebra::Field(field)) => Some(alltop_quadratic_bridge(f, field)?),
        _ => None,
    };
    let scalar_lookup = scalar_action_lookup(f, &algebra);

    let (pg_identity, phg_identity) = if construction.is_odd() {
        (Some(pg_count_identity(f.params().p as u64, n)), None)
    } else {
        let id = phg_count_identity(n);
        if !id.proof_holds {
            notes.push(format!(
                "even counting identity: adding 2^n non-unit vectors gives {} = 4^n; adding 2^(n-1) gives {}",
                id.statement_total, id.proof_total
            ));
        }
        (None, Some(id))
    };

    let expected_rank = if construction.is_odd() { 2 * n } else { n };
    let mut passed = module.passed();
    if let Some(r) = rank {
        let order_ok = r.order(m) == Some(working.len() as u64);
        passed &= r.free_rank == expected_rank && r.is_free() && order_ok;
        if !order_ok {
            discrepancies.push(format!("module order {:?} differs from set size {}", r.order(m), working.len()));
        }
        if construction.is_odd() {
            if r.free_rank as i64 - 1 != stated_projective_dimension {
                discrepancies.push(format!(
                    "projective dimension {} differs from stated 2n-1 = {}",
                    r.free_rank as i64 - 1,
                    stated_projective_dimension
                ));
            }
        } else {
            discrepancies.push(format!(
                "free rank {} gives projective dimension {} in PHG(2^n-1, Z_4); the stated subspace dimension is 2^(n-1) = {}",
                r.free_rank,
                r.free_rank as i64 - 1,
                stated_projective_dimension
            ));
        }
    }
    if let Some(Freeness::NotFree { .. }) = free {
        passed = false;
    }
    if construction.is_odd() {
        passed &= working.len() as u64 == (f.params().p as u64).pow(2 * n as u32);
        if construction != Construction::Alltop {
            passed &= idempotent;
        } else {
            passed &= !family_module.closure;
        }
        notes.push(format!(
            "exponents live in Z_{m} (root order p), while the dimension is q = {q}"
        ));
    } else {
        passed &= idempotent && working.len() as u64 == 1u64 << (2 * n);
    }
    if let Some(ps) = &points {
        passed &= ps.census.consistent;
    }
    if let Some(b) = &bridge {
        passed &= b.mismatches == 0 && b.matches_planar_square && b.interpolation != Some(false);
    }
    if scalar_lookup == Some(false) {
        passed = false;
    }
    if let Some(id) = &pg_identity {
        passed &= id.holds;
    }

    Ok(AuditReport {
        construction,
        q,
        m,
        n,
        family_module,
        derived_size: derived.differences.len(),
        phase_class_count: derived.phase_classes.len(),
        non_unit_count: derived.non_units.len(),
        idempotent,
        working_set,
        closure: module.closure,
        identity_present: module.identity,
        inverses: module.inverses,
        scalar_action_closed: module.scalar_action,
        module_failures: module.failures,
        rank,
        free,
        vector_count: working.len(),
        projective_dimension,
        stated_projective_dimension,
        scalar_lookup,
        bridge,
        points,
        pg_identity,
        phg_identity,
        discrepancies,
        notes,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_alltop, build_galois_ring, build_symplectic};

    fn planar(p: u32, n: usize) -> MubFamily {
        let field = Field::new(p, n, None).unwrap();
        build_planar(&field, &PlanarFunction::square(&field)).unwrap()
    }

    fn set_of(m: u8, len: usize, vs: &[&[u8]]) -> ExponentSet {
        let mut s = ExponentSet::new(m, len);
        for v in vs {
            s.insert(v.to_vec());
        }
        s
    }

    #[test]
    fn hat_product_examples() {
        let v = ExponentVector::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(hat_product(&v, &v, true).unwrap(), ExponentVector::zero(3, 3));
        assert_eq!(hat_product(&v, &v, false).unwrap().entries(), &[0, 2, 1]);
        let w = ExponentVector::new(3, vec![0, 1]).unwrap();
        assert!(matches!(hat_product(&v, &w, true), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn planar_difference_lookup() {
        // v_ab ⊙̂ v*_cd = v_(a−c)(b−d)
        let field = Field::new(3, 2, None).unwrap();
        let f = build_planar(&field, &PlanarFunction::square(&field)).unwrap();
        for ia in 0..9 {
            for ib in 0..9 {
                for ic in 0..9 {
                    for id in (0..9).step_by(4) {
                        let h = hat_product(f.vector(ia, ib), f.vector(ic, id), true).unwrap();
                        let ja = field.index_of(field.sub(field.element(ia), field.element(ic)));
                        let jb = field.index_of(field.sub(field.element(ib), field.element(id)));
                        assert_eq!(&h, f.vector(ja, jb));
                    }
                }
            }
        }
    }

    #[test]
    fn planar_sets_are_idempotent() {
        let f = planar(3, 1);
        let d = derive_sets(&f);
        assert_eq!(d.differences.len(), 9);
        assert_eq!(d.differences, ExponentSet::from_family(&f));
        assert_eq!(d.non_units.len(), 1);
        assert!(module_axioms_check(&d.differences).passed());
        assert_eq!(module_rank(&d.differences).unwrap(), ModuleRank { free_rank: 2, torsion_rank: 0 });
    }

    #[test]
    fn planar_gf9_rank() {
        let f = planar(3, 2);
        let set = ExponentSet::from_family(&f);
        assert_eq!(module_rank(&set).unwrap().free_rank, 4);
    }

    #[test]
    fn alltop_raw_set_not_closed() {
        let f = build_alltop(&Field::prime(5).unwrap()).unwrap();
        let raw = ExponentSet::from_family(&f);
        let check = module_axioms_check(&raw);
        assert!(!check.closure);
        let w = &check.failures.iter().find(|fl| fl.axiom == Axiom::Closure).unwrap().witness;
        let sum: Vec<u8> = w[0].iter().zip(&w[1]).map(|(a, b)| (a + b) % 5).collect();
        assert!(!raw.contains(&sum));
        assert_eq!(module_rank(&raw).unwrap_err(), Error::NotAModule);
    }

    #[test]
    fn alltop_derived_is_planar() {
        let field = Field::prime(5).unwrap();
        let f = build_alltop(&field).unwrap();
        let d = derive_sets(&f);
        assert_eq!(d.phase_classes.len(), 25);
        // with the phase: (q²−1)·p + 1 vectors (constant shifts only appear off the identity)
        assert_eq!(d.differences.len(), 24 * 5 + 1);
        let bridge = alltop_quadratic_bridge(&f, &field).unwrap();
        assert_eq!(bridge.mismatches, 0);
        assert_eq!(bridge.pairs_checked, 625);
        assert_eq!(bridge.interpolation, Some(true));
        assert!(bridge.matches_planar_square);
        assert!(module_axioms_check(&d.phase_classes).passed());
    }

    #[test]
    fn galois_ring_non_units() {
        let f = build_galois_ring(&GaloisRing::new(1, None).unwrap());
        let d = derive_sets(&f);
        // brute force over the 16 differences of the 4 family vectors
        let vs: Vec<Vec<u8>> = f.vectors().map(|v| v.entries().to_vec()).collect();
        let mut oracle = BTreeSet::new();
        for u in &vs {
            for v in &vs {
                let w: Vec<u8> = u.iter().zip(v).map(|(a, b)| (a + 4 - b) % 4).collect();
                if w.iter().all(|e| e % 2 == 0) {
                    oracle.insert(w);
                }
            }
        }
        let got: BTreeSet<Vec<u8>> = d.non_units.iter().cloned().collect();
        assert_eq!(got, oracle);
        assert_eq!(got, [vec![0, 0], vec![0, 2]].into_iter().collect());
    }

    #[test]
    fn z4_rank_and_freeness() {
        let f = build_galois_ring(&GaloisRing::new(2, None).unwrap());
        let set = ExponentSet::from_family(&f);
        assert_eq!(set.len(), 16);
        assert_eq!(module_rank(&set).unwrap(), ModuleRank { free_rank: 2, torsion_rank: 0 });
        assert_eq!(free_check(&set).unwrap(), Freeness::Free);

        let f1 = build_galois_ring(&GaloisRing::new(1, None).unwrap());
        assert_eq!(free_check(&ExponentSet::from_family(&f1)).unwrap(), Freeness::Free);

        let bad = set_of(4, 2, &[&[0, 0], &[0, 2]]);
        assert_eq!(free_check(&bad).unwrap(), Freeness::NotFree { witness: vec![0, 2] });
        assert_eq!(module_rank(&bad).unwrap(), ModuleRank { free_rank: 0, torsion_rank: 1 });

        // Z_4 ⊕ Z_2 is not free even though reduction mod 2 has rank 1
        let mixed = set_of(
            4,
            2,
            &[&[0, 0], &[1, 0], &[2, 0], &[3, 0], &[0, 2], &[1, 2], &[2, 2], &[3, 2]],
        );
        assert_eq!(module_rank(&mixed).unwrap(), ModuleRank { free_rank: 1, torsion_rank: 1 });
        assert!(matches!(free_check(&mixed).unwrap(), Freeness::NotFree { .. }));
    }

    #[test]
    fn audit_planar_z5() {
        let r = audit_family(&planar(5, 1)).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.closure && r.identity_present && r.inverses && r.scalar_action_closed);
        assert_eq!(r.rank.unwrap().free_rank, 2);
        assert_eq!(r.projective_dimension, Some(1));
        assert_eq!(r.vector_count, 25);
        assert!(r.discrepancies.is_empty());
        assert_eq!(r.scalar_lookup, Some(true));
    }

    #[test]
    fn audit_symplectic_gf27() {
        let f = build_symplectic(&Field::new(3, 3, None).unwrap(), 1).unwrap();
        let r = audit_family(&f).unwrap();
        assert!(r.passed);
        assert_eq!(r.rank.unwrap().free_rank, 6);
        assert_eq!(r.projective_dimension, Some(5));
        assert!(r.idempotent);
    }

    #[test]
    fn audit_galois_ring_n3() {
        let f = build_galois_ring(&GaloisRing::new(3, None).unwrap());
        let r = audit_family(&f).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.rank.unwrap(), ModuleRank { free_rank: 3, torsion_rank: 0 });
        assert_eq!(r.free, Some(Freeness::Free));
        assert_eq!(r.vector_count, 64);
        assert_eq!(r.stated_projective_dimension, 4);
        assert_eq!(r.discrepancies.len(), 1);
    }
}
