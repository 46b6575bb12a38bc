//! Family files: JSON (round-trips), CSV (one row per vector) and a
//! floating-point debug export of the explicit complex vectors.

use std::io::Write;

use mubs_core::{Construction, FamilyParams, MubFamily};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u32>,
    pub n: usize,
    pub modulus: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub planar_poly: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<u32>,
}

/// Header shared by family files and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub q: usize,
    pub m: u8,
    pub construction: String,
    pub params: ParamsDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub q: usize,
    pub m: u8,
    pub construction: String,
    pub params: ParamsDoc,
    /// `bases[a][b][x]`, in element enumeration order.
    pub bases: Vec<Vec<Vec<u8>>>,
}

impl FamilySummary {
    pub fn of(f: &MubFamily) -> FamilySummary {
        let params = f.params();
        let (planar_poly, s) = match &params.construction {
            Construction::Planar { poly } => (poly.clone(), None),
            Construction::Symplectic { s } => (None, Some(*s)),
            _ => (None, None),
        };
        FamilySummary {
            q: f.dimension(),
            m: f.root_order(),
            construction: params.construction.tag().to_string(),
            params: ParamsDoc {
                p: params.construction.is_odd().then_some(params.p),
                n: params.n,
                modulus: params.modulus.clone(),
                planar_poly,
                s,
            },
        }
    }
}

impl FamilyDoc {
    pub fn of(f: &MubFamily) -> FamilyDoc {
        let FamilySummary { q, m, construction, params } = FamilySummary::of(f);
        let bases = f
            .bases()
            .iter()
            .map(|basis| basis.iter().map(|v| v.entries().to_vec()).collect())
            .collect();
        FamilyDoc { q, m, construction, params, bases }
    }

    pub fn into_family(self) -> Result<MubFamily, CliError> {
        let construction = match self.construction.as_str() {
            "planar" => Construction::Planar { poly: self.params.planar_poly },
            "alltop" => Construction::Alltop,
            "symplectic" => Construction::Symplectic {
                s: self.params.s.ok_or_else(|| CliError::usage("symplectic family without \"s\""))?,
            },
            "galois-ring" => Construction::GaloisRing,
            other => return Err(CliError::usage(format!("unknown construction {other:?}"))),
        };
        let p = match construction {
            Construction::GaloisRing => 2,
            _ => self.params.p.ok_or_else(|| CliError::usage("field family without \"p\""))?,
        };
        let params = FamilyParams { construction, p, n: self.params.n, modulus: self.params.modulus };
        let family = MubFamily::from_parts(params, self.m, self.bases)?;
        if family.dimension() != self.q {
            return Err(CliError::usage("\"q\" does not match the number of bases"));
        }
        Ok(family)
    }
}

pub fn family_to_json(f: &MubFamily) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec(&FamilyDoc::of(f))?;
    out.push(b'\n');
    Ok(out)
}

pub fn family_from_json(bytes: &[u8]) -> Result<MubFamily, CliError> {
    let doc: FamilyDoc = serde_json::from_slice(bytes)?;
    doc.into_family()
}

/// Columns `a, b, e_0, …, e_{q−1}`; `a` and `b` are enumeration indices.
pub fn family_to_csv(f: &MubFamily) -> Result<Vec<u8>, CliError> {
    let q = f.dimension();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["a".to_string(), "b".to_string()];
    header.extend((0..q).map(|x| format!("e_{x}")));
    w.write_record(&header)?;
    for (a, basis) in f.bases().iter().enumerate() {
        for (b, v) in basis.iter().enumerate() {
            let mut row = vec![a.to_string(), b.to_string()];
            row.extend(v.entries().iter().map(|e| e.to_string()));
            w.write_record(&row)?;
        }
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

/// Explicit normalized complex vectors `(re, im)`; debug only.
pub fn complex_vectors(f: &MubFamily) -> Vec<Vec<Vec<(f64, f64)>>> {
    let m = f.root_order() as f64;
    let norm = 1.0 / (f.dimension() as f64).sqrt();
    f.bases()
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|v| {
                    v.entries()
                        .iter()
                        .map(|&e| {
                            let t = 2.0 * std::f64::consts::PI * e as f64 / m;
                            (norm * t.cos(), norm * t.sin())
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn complex_to_json(f: &MubFamily) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    serde_json::to_writer(&mut buf, &serde_json::json!({
        "summary": FamilySummary::of(f),
        "vectors": complex_vectors(f),
    }))?;
    writeln!(buf)?;
    Ok(buf)
}
