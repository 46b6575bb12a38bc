//! JSON documents for verification, audit and geometry results.

use std::collections::BTreeMap;

use mubs_core::audit::{Axiom, AxiomFailure, Freeness, WorkingSet};
use mubs_core::geometry::{Census, PgCountIdentity, PhgCountIdentity, PointKind, PointSet};
use mubs_core::verify::{FailureKind, PairFailure, ValueKey};
use mubs_core::{AuditReport, MubFamily, VerifyMode, VerifyReport};
use serde::Serialize;

use crate::format::FamilySummary;

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

#[derive(Debug, Serialize)]
pub struct FailureDoc {
    pub kind: &'static str,
    /// `[basis, vector]`
    pub first: [usize; 2],
    pub second: [usize; 2],
    /// `null` when the value is irrational.
    pub value: Option<i64>,
}

impl From<&PairFailure> for FailureDoc {
    fn from(f: &PairFailure) -> FailureDoc {
        FailureDoc {
            kind: match f.kind {
                FailureKind::NotOrthogonal => "not-orthogonal",
                FailureKind::NotUnbiased => "not-unbiased",
                FailureKind::BadNorm => "bad-norm",
            },
            first: [f.first.0, f.first.1],
            second: [f.second.0, f.second.1],
            value: f.value,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub family: FamilySummary,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub verdict: &'static str,
    pub pairs_checked: u64,
    /// Exact `|S|²` values (`|⟨u,v⟩|² = value / q²`) and how often each occurred.
    pub histogram: BTreeMap<String, u64>,
    pub standard_basis_ok: bool,
    pub failure_count: u64,
    pub failures: Vec<FailureDoc>,
}

impl VerifyDoc {
    pub fn new(f: &MubFamily, r: &VerifyReport) -> VerifyDoc {
        let (mode, samples, seed) = match r.mode {
            VerifyMode::Full => ("full", None, None),
            VerifyMode::Sampled { samples, seed } => ("sampled", Some(samples), Some(seed)),
        };
        let histogram = r
            .histogram
            .iter()
            .map(|(k, &v)| {
                let key = match k {
                    ValueKey::Integer(i) => i.to_string(),
                    ValueKey::NonRational => "non-rational".to_string(),
                };
                (key, v)
            })
            .collect();
        VerifyDoc {
            family: FamilySummary::of(f),
            mode,
            samples,
            seed,
            verdict: verdict(r.passed),
            pairs_checked: r.pairs_checked,
            histogram,
            standard_basis_ok: r.standard_basis_ok,
            failure_count: r.failure_count,
            failures: r.failures.iter().map(FailureDoc::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AxiomFailureDoc {
    pub axiom: &'static str,
    pub witness: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<u8>,
}

impl From<&AxiomFailure> for AxiomFailureDoc {
    fn from(f: &AxiomFailure) -> AxiomFailureDoc {
        AxiomFailureDoc {
            axiom: match f.axiom {
                Axiom::Closure => "closure",
                Axiom::Identity => "identity",
                Axiom::Inverses => "inverses",
                Axiom::ScalarAction => "scalar-action",
            },
            witness: f.witness.clone(),
            scalar: f.scalar,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CensusDoc {
    pub kind: &'static str,
    pub vectors: usize,
    pub point_vectors: usize,
    pub excluded_vectors: usize,
    pub points: usize,
    pub representatives: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbourhoods: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_per_neighbourhood: Option<[usize; 2]>,
    pub rank: usize,
    pub expected_points: u64,
    pub consistent: bool,
}

fn kind_name(k: PointKind) -> &'static str {
    match k {
        PointKind::Pg => "PG",
        PointKind::Phg => "PHG",
    }
}

impl From<&Census> for CensusDoc {
    fn from(c: &Census) -> CensusDoc {
        CensusDoc {
            kind: kind_name(c.kind),
            vectors: c.vectors,
            point_vectors: c.point_vectors,
            excluded_vectors: c.excluded_vectors,
            points: c.points,
            representatives: [c.representatives.0, c.representatives.1],
            neighbourhoods: c.neighbourhoods,
            points_per_neighbourhood: c.points_per_neighbourhood.map(|(a, b)| [a, b]),
            rank: c.rank,
            expected_points: c.expected_points,
            consistent: c.consistent,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PgIdentityDoc {
    pub points: u64,
    pub vectors_with_zero: u64,
    pub family_vectors: u64,
    pub holds: bool,
}

impl From<&PgCountIdentity> for PgIdentityDoc {
    fn from(id: &PgCountIdentity) -> PgIdentityDoc {
        PgIdentityDoc {
            points: id.points,
            vectors_with_zero: id.vectors_with_zero,
            family_vectors: id.family_vectors,
            holds: id.holds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PhgIdentityDoc {
    pub points_per_neighbourhood: u64,
    pub neighbourhoods: u64,
    pub point_vectors: u64,
    pub target: u64,
    pub statement_total: u64,
    pub proof_total: u64,
    pub statement_holds: bool,
    pub proof_holds: bool,
}

impl From<&PhgCountIdentity> for PhgIdentityDoc {
    fn from(id: &PhgCountIdentity) -> PhgIdentityDoc {
        PhgIdentityDoc {
            points_per_neighbourhood: id.points_per_neighbourhood,
            neighbourhoods: id.neighbourhoods,
            point_vectors: id.point_vectors,
            target: id.target,
            statement_total: id.statement_total,
            proof_total: id.proof_total,
            statement_holds: id.statement_holds,
            proof_holds: id.proof_holds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GeometryDoc {
    pub family: FamilySummary,
    pub kind: Option<&'static str>,
    /// Sorted canonical coordinates.
    pub points: Vec<Vec<u8>>,
    pub census: Option<CensusDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pg_identity: Option<PgIdentityDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phg_identity: Option<PhgIdentityDoc>,
}

impl GeometryDoc {
    pub fn new(f: &MubFamily, r: &AuditReport) -> GeometryDoc {
        let points: Option<&PointSet> = r.points.as_ref();
        GeometryDoc {
            family: FamilySummary::of(f),
            kind: points.map(|ps| kind_name(ps.census.kind)),
            points: points
                .map(|ps| ps.points.iter().map(|pt| pt.rep().to_vec()).collect())
                .unwrap_or_default(),
            census: points.map(|ps| CensusDoc::from(&ps.census)),
            pg_identity: r.pg_identity.as_ref().map(PgIdentityDoc::from),
            phg_identity: r.phg_identity.as_ref().map(PhgIdentityDoc::from),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BridgeDoc {
    pub pairs_checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<[[usize; 2]; 2]>,
    pub interpolation: Option<bool>,
    pub matches_planar_square: bool,
}

#[derive(Debug, Serialize)]
pub struct AuditDoc {
    pub family: FamilySummary,
    pub verdict: &'static str,
    /// `"family"` or `"phase-classes"`.
    pub working_set: &'static str,
    pub family_set_closed: bool,
    pub family_set_failures: Vec<AxiomFailureDoc>,
    pub derived_size: usize,
    pub phase_class_count: usize,
    pub non_unit_count: usize,
    pub idempotent: bool,
    pub closure: bool,
    pub identity_present: bool,
    pub inverses: bool,
    pub scalar_action_closed: bool,
    pub failures: Vec<AxiomFailureDoc>,
    pub rank: Option<usize>,
    pub torsion_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_witness: Option<Vec<u8>>,
    pub vector_count: usize,
    pub projective_dimension: Option<i64>,
    pub stated_projective_dimension: i64,
    pub scalar_lookup: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeDoc>,
    pub census: Option<CensusDoc>,
    pub discrepancies: Vec<String>,
    pub notes: Vec<String>,
}

impl AuditDoc {
    pub fn new(f: &MubFamily, r: &AuditReport) -> AuditDoc {
        let (free, free_witness) = match &r.free {
            Some(Freeness::Free) => (Some(true), None),
            Some(Freeness::NotFree { witness }) => (Some(false), Some(witness.clone())),
            None => (None, None),
        };
        AuditDoc {
            family: FamilySummary::of(f),
            verdict: verdict(r.passed),
            working_set: match r.working_set {
                WorkingSet::Family => "family",
                WorkingSet::PhaseClasses => "phase-classes",
            },
            family_set_closed: r.family_module.passed(),
            family_set_failures: r.family_module.failures.iter().map(AxiomFailureDoc::from).collect(),
            derived_size: r.derived_size,
            phase_class_count: r.phase_class_count,
            non_unit_count: r.non_unit_count,
            idempotent: r.idempotent,
            closure: r.closure,
            identity_present: r.identity_present,
            inverses: r.inverses,
            scalar_action_closed: r.scalar_action_closed,
            failures: r.module_failures.iter().map(AxiomFailureDoc::from).collect(),
            rank: r.rank.map(|k| k.free_rank),
            torsion_rank: r.rank.map(|k| k.torsion_rank),
            free,
            free_witness,
            vector_count: r.vector_count,
            projective_dimension: r.projective_dimension,
            stated_projective_dimension: r.stated_projective_dimension,
            scalar_lookup: r.scalar_lookup,
            bridge: r.bridge.as_ref().map(|b| BridgeDoc {
                pairs_checked: b.pairs_checked,
                mismatches: b.mismatches,
                first_mismatch: b.first_mismatch.map(|((a, b2), (c, d))| [[a, b2], [c, d]]),
                interpolation: b.interpolation,
                matches_planar_square: b.matches_planar_square,
            }),
            census: r.points.as_ref().map(|ps| CensusDoc::from(&ps.census)),
            discrepancies: r.discrepancies.clone(),
            notes: r.notes.clone(),
        }
    }
}
