//! Runs a validated configuration and produces the artifact bytes.

use std::fs;
use std::io::Write;

use mubs_core::audit::derive_sets;
use mubs_core::{audit_family, build, verify_family, AuditReport, ExponentSet, MubFamily, VerifyReport};
use serde::Serialize;

use crate::config::{Command, CompareConfig, FamilySource, Format, Output, RunConfig};
use crate::error::CliError;
use crate::format::{complex_to_json, family_from_json, family_to_csv, family_to_json, FamilyDoc, FamilySummary};
use crate::report::{AuditDoc, GeometryDoc, VerifyDoc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub passed: bool,
    /// One line, no trailing newline.
    pub verdict: String,
    pub artifact: Vec<u8>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn load_family(source: &FamilySource) -> Result<MubFamily, CliError> {
    match source {
        FamilySource::Build { construction, p, n, modulus } => Ok(build(construction, *p, *n, modulus.as_deref())?),
        FamilySource::File(path) => family_from_json(&fs::read(path)?),
    }
}

fn to_json<T: Serialize>(doc: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec(doc)?;
    out.push(b'\n');
    Ok(out)
}

fn word(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn geometry_passed(r: &AuditReport) -> bool {
    r.points.as_ref().is_some_and(|ps| ps.census.consistent) && r.pg_identity.as_ref().is_none_or(|id| id.holds)
}

fn verify_line(r: &VerifyReport) -> String {
    format!("verify {} ({} pairs, {} failures)", word(r.passed), r.pairs_checked, r.failure_count)
}

fn audit_line(r: &AuditReport) -> String {
    let rank = match r.rank {
        Some(k) if k.torsion_rank == 0 => format!("rank {}", k.free_rank),
        Some(k) => format!("rank {}+{} torsion", k.free_rank, k.torsion_rank),
        None => "rank n/a".to_string(),
    };
    format!("audit {} ({rank})", word(r.passed))
}

fn geometry_line(r: &AuditReport) -> String {
    let points = r.points.as_ref().map_or(0, |ps| ps.census.points);
    format!("geometry {} ({points} points)", word(geometry_passed(r)))
}

#[derive(Serialize)]
struct AllDoc {
    family: FamilyDoc,
    verify: VerifyDoc,
    audit: AuditDoc,
    geometry: GeometryDoc,
}

pub fn run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let family = load_family(&cfg.source)?;
    let label = format!("{} {}", cfg.command.name(), cfg.source.stem());
    let q = family.dimension();
    let mode = cfg.mode.resolve(q, cfg.seed);
    let (passed, detail, artifact) = match cfg.command {
        Command::Construct => {
            let artifact = match cfg.format {
                Format::Json => family_to_json(&family)?,
                Format::Csv => family_to_csv(&family)?,
                Format::Complex => complex_to_json(&family)?,
            };
            (true, format!("{} bases of {q} vectors", family.bases().len() + 1), artifact)
        }
        Command::Verify => {
            let r = verify_family(&family, mode)?;
            (r.passed, verify_line(&r), to_json(&VerifyDoc::new(&family, &r))?)
        }
        Command::Audit => {
            let r = audit_family(&family)?;
            (r.passed, audit_line(&r), to_json(&AuditDoc::new(&family, &r))?)
        }
        Command::Geometry => {
            let r = audit_family(&family)?;
            (geometry_passed(&r), geometry_line(&r), to_json(&GeometryDoc::new(&family, &r))?)
        }
        Command::All => {
            let v = verify_family(&family, mode)?;
            let a = audit_family(&family)?;
            let passed = v.passed && a.passed && geometry_passed(&a);
            let detail = format!("{}; {}; {}", verify_line(&v), audit_line(&a), geometry_line(&a));
            let doc = AllDoc {
                family: FamilyDoc::of(&family),
                verify: VerifyDoc::new(&family, &v),
                audit: AuditDoc::new(&family, &a),
                geometry: GeometryDoc::new(&family, &a),
            };
            (passed, detail, to_json(&doc)?)
        }
    };
    Ok(RunOutcome { passed, verdict: format!("{label}: {} - {detail}", word(passed)), artifact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetRelation {
    Equal,
    LeftSubset,
    RightSubset,
    Incomparable,
}

#[derive(Debug, Serialize)]
pub struct CompareDoc {
    pub left: FamilySummary,
    pub right: FamilySummary,
    pub relation: SetRelation,
    pub left_size: usize,
    pub right_size: usize,
    pub common: usize,
    pub only_left: usize,
    pub only_right: usize,
    /// First vectors (in sorted order) of each one-sided difference.
    pub left_witness: Option<Vec<u8>>,
    pub right_witness: Option<Vec<u8>>,
}

/// Compares two sets of phase-normalized exponent vectors.
pub fn relate(left: &ExponentSet, right: &ExponentSet) -> (SetRelation, Option<Vec<u8>>, Option<Vec<u8>>) {
    let lw = left.difference(right).next().cloned();
    let rw = right.difference(left).next().cloned();
    let relation = match (&lw, &rw) {
        (None, None) => SetRelation::Equal,
        (None, Some(_)) => SetRelation::LeftSubset,
        (Some(_), None) => SetRelation::RightSubset,
        (Some(_), Some(_)) => SetRelation::Incomparable,
    };
    (relation, lw, rw)
}

pub fn compare(cfg: &CompareConfig) -> Result<RunOutcome, CliError> {
    let left = load_family(&cfg.left)?;
    let right = load_family(&cfg.right)?;
    if left.dimension() != right.dimension() {
        return Err(CliError::DimensionMismatch { left: left.dimension(), right: right.dimension() });
    }
    if left.root_order() != right.root_order() {
        return Err(mubs_core::Error::ModulusMismatch { left: left.root_order(), right: right.root_order() }.into());
    }
    let l = derive_sets(&left).phase_classes;
    let r = derive_sets(&right).phase_classes;
    let (relation, left_witness, right_witness) = relate(&l, &r);
    let only_left = l.difference(&r).count();
    let only_right = r.difference(&l).count();
    let doc = CompareDoc {
        left: FamilySummary::of(&left),
        right: FamilySummary::of(&right),
        relation,
        left_size: l.len(),
        right_size: r.len(),
        common: l.len() - only_left,
        only_left,
        only_right,
        left_witness,
        right_witness,
    };
    let name = serde_json::to_value(relation)?;
    let verdict = format!(
        "compare {} vs {}: {} ({} vs {} vectors)",
        cfg.left.stem(),
        cfg.right.stem(),
        name.as_str().unwrap_or_default(),
        l.len(),
        r.len()
    );
    Ok(RunOutcome { passed: true, verdict, artifact: to_json(&doc)? })
}

/// Writes the artifact; returns `true` when it went to standard output.
pub fn write_artifact(output: &Output, bytes: &[u8]) -> Result<bool, CliError> {
    match output {
        Output::Stdout => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(true)
        }
        Output::File(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, bytes)?;
            Ok(false)
        }
    }
}
