//! Exact unbiasedness checks on exponent vectors.
//!
//! For `u, v` the unnormalized inner product is the character sum
//! `S = Σ_x ω_m^{v_x − u_x} = Σ_k c_k ω^k`, where `c_k` counts positions with
//! difference `k`. Then `|S|² = Σ_j d_j ω^j` with `d_j = Σ_k c_k c_{k+j}`.
//!
//! * `m = p` prime: `ω, …, ω^{p−1}` are linearly independent over `Q`, so
//!   `|S|²` is rational iff `d_1 = … = d_{p−1}`, and then `|S|² = d_0 − d_1`.
//! * `m = 4`: `S = (c_0 − c_2) + (c_1 − c_3)i` is a Gaussian integer.
//!
//! A normalized pair has `|⟨u, v⟩|² = |S|² / q²`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::family::{ExponentVector, MubFamily};
use crate::Result;

/// Largest dimension accepted by [`VerifyMode::Full`].
pub const FULL_MODE_MAX_Q: usize = 81;

/// Failures kept verbatim in a report; the rest are only counted.
pub const MAX_RECORDED_FAILURES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InnerProductKind {
    RationalInteger,
    NonRational,
}

/// Exact `|S|²` for a pair of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProductValue {
    pub kind: InnerProductKind,
    /// `|S|²` when it is a rational integer.
    pub value: Option<i64>,
    /// `c_k`: how many positions have `v_x − u_x ≡ k (mod m)`.
    pub residue_counts: Vec<u32>,
}

impl InnerProductValue {
    /// Autocorrelations `d_j = Σ_k c_k c_{k+j}` of the residue counts.
    pub fn correlations(&self) -> Vec<i64> {
        correlations(&self.residue_counts)
    }
}

fn correlations(c: &[u32]) -> Vec<i64> {
    let m = c.len();
    (0..m)
        .map(|j| (0..m).map(|k| c[k] as i64 * c[(k + j) % m] as i64).sum())
        .collect()
}

fn check_pair(u: &ExponentVector, v: &ExponentVector) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    if u.modulus() != v.modulus() {
        return Err(Error::ModulusMismatch { left: u.modulus(), right: v.modulus() });
    }
    Ok(())
}

/// Exact `|Σ_x ω^{v_x − u_x}|²`.
pub fn inner_product_sq(u: &ExponentVector, v: &ExponentVector) -> Result<InnerProductValue> {
    check_pair(u, v)?;
    let m = u.modulus();
    let mut counts = vec![0u32; m as usize];
    let value = pair_value(u.entries(), v.entries(), m, &mut counts);
    let kind = if value.is_some() { InnerProductKind::RationalInteger } else { InnerProductKind::NonRational };
    Ok(InnerProductValue { kind, value, residue_counts: counts })
}

/// Hot path of [`inner_product_sq`]: fills `counts` and returns `|S|²`.
fn pair_value(u: &[u8], v: &[u8], m: u8, counts: &mut [u32]) -> Option<i64> {
    counts.iter_mut().for_each(|c| *c = 0);
    for (&a, &b) in u.iter().zip(v) {
        let d = if b >= a { b - a } else { b + m - a };
        counts[d as usize] += 1;
    }
    if m == 4 {
        let re = counts[0] as i64 - counts[2] as i64;
        let im = counts[1] as i64 - counts[3] as i64;
        return Some(re * re + im * im);
    }
    let m = m as usize;
    let corr = |j: usize| -> i64 { (0..m).map(|k| counts[k] as i64 * counts[(k + j) % m] as i64).sum() };
    let d1 = corr(1);
    // d_j = d_{m-j}, so half the range suffices
    if (2..=m / 2).any(|j| corr(j) != d1) {
        return None;
    }
    Some(corr(0) - d1)
}

/// Where a failing pair sits: `(basis, vector)` indices.
pub type Position = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    NotOrthogonal,
    NotUnbiased,
    BadNorm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub kind: FailureKind,
    pub first: Position,
    pub second: Position,
    /// `None` when `|S|²` is irrational.
    pub value: Option<i64>,
}

/// Verdict for a pairwise check: `Ok` or the first failing pair.
pub type PairVerdict = core::result::Result<(), PairFailure>;

/// Every distinct pair in `basis` must be orthogonal (`|S|² = 0`) and every
/// vector must have `|S|² = q²` against itself.
pub fn verify_orthonormal(basis: &[ExponentVector]) -> Result<PairVerdict> {
    let Some(first) = basis.first() else {
        return Ok(Ok(()));
    };
    let q = first.len() as i64;
    let m = first.modulus();
    let mut counts = vec![0u32; m as usize];
    for (i, u) in basis.iter().enumerate() {
        check_pair(first, u)?;
        let norm = pair_value(u.entries(), u.entries(), m, &mut counts);
        if norm != Some(q * q) {
            return Ok(Err(PairFailure { kind: FailureKind::BadNorm, first: (0, i), second: (0, i), value: norm }));
        }
        for (j, v) in basis.iter().enumerate().skip(i + 1) {
            let value = pair_value(u.entries(), v.entries(), m, &mut counts);
            if value != Some(0) {
                return Ok(Err(PairFailure { kind: FailureKind::NotOrthogonal, first: (0, i), second: (0, j), value }));
            }
        }
    }
    Ok(Ok(()))
}

/// Every cross pair must satisfy `|S|² = q`.
pub fn verify_unbiased(left: &[ExponentVector], right: &[ExponentVector]) -> Result<PairVerdict> {
    let Some(first) = left.first().or(right.first()) else {
        return Ok(Ok(()));
    };
    let q = first.len() as i64;
    let m = first.modulus();
    let mut counts = vec![0u32; m as usize];
    for (i, u) in left.iter().enumerate() {
        for (j, v) in right.iter().enumerate() {
            check_pair(u, v)?;
            let value = pair_value(u.entries(), v.entries(), m, &mut counts);
            if value != Some(q) {
                return Ok(Err(PairFailure { kind: FailureKind::NotUnbiased, first: (0, i), second: (1, j), value }));
            }
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every pair; limited to `q ≤ 81`.
    Full,
    /// `samples` random pairs per basis and per basis pair.
    Sampled { samples: usize, seed: u64 },
}

/// Histogram key for exact values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueKey {
    Integer(i64),
    NonRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub q: usize,
    pub passed: bool,
    /// Pairs evaluated, self pairs included.
    pub pairs_checked: u64,
    pub histogram: BTreeMap<ValueKey, u64>,
    /// Every entry has modulus 1/√q, which makes each `V_a` unbiased with
    /// the standard basis.
    pub standard_basis_ok: bool,
    pub failures: Vec<PairFailure>,
    pub failure_count: u64,
}

impl VerifyReport {
    /// Values of `|S|²` seen, in ascending order.
    pub fn value_support(&self) -> Vec<ValueKey> {
        self.histogram.keys().copied().collect()
    }
}

struct Tally {
    q: i64,
    m: u8,
    counts: Vec<u32>,
    pairs: u64,
    histogram: BTreeMap<ValueKey, u64>,
    failures: Vec<PairFailure>,
    failure_count: u64,
}

impl Tally {
    fn check(&mut self, f: &MubFamily, first: Position, second: Position) {
        let u = f.vector(first.0, first.1).entries();
        let v = f.vector(second.0, second.1).entries();
        let value = pair_value(u, v, self.m, &mut self.counts);
        self.pairs += 1;
        let key = value.map_or(ValueKey::NonRational, ValueKey::Integer);
        *self.histogram.entry(key).or_insert(0) += 1;
        let (expected, kind) = if first == second {
            (self.q * self.q, FailureKind::BadNorm)
        } else if first.0 == second.0 {
            (0, FailureKind::NotOrthogonal)
        } else {
            (self.q, FailureKind::NotUnbiased)
        };
        if value != Some(expected) {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(PairFailure { kind, first, second, value });
            }
        }
    }
}

/// Checks that a family, together with the standard basis, is a complete
/// set of `q + 1` mutually unbiased bases.
pub fn verify_family(f: &MubFamily, mode: VerifyMode) -> Result<VerifyReport> {
    let q = f.dimension();
    let m = f.root_order();
    if mode == VerifyMode::Full && q > FULL_MODE_MAX_Q {
        return Err(Error::FullModeTooLarge { q });
    }
    let shape_ok = f.bases().len() == q
        && f.bases().iter().all(|b| b.len() == q)
        && f.vectors().all(|v| v.len() == q && v.modulus() == m);
    if !shape_ok {
        return Err(Error::MalformedFamily("family is not q bases of q vectors of length q"));
    }
    let standard_basis_ok = f.vectors().all(|v| v.entries().iter().all(|&e| e < m));

    let mut tally = Tally {
        q: q as i64,
        m,
        counts: vec![0; m as usize],
        pairs: 0,
        histogram: BTreeMap::new(),
        failures: Vec::new(),
        failure_count: 0,
    };
    match mode {
        VerifyMode::Full => {
            for a in 0..q {
                for i in 0..q {
                    tally.check(f, (a, i), (a, i));
                    for j in i + 1..q {
                        tally.check(f, (a, i), (a, j));
                    }
                }
                for b in a + 1..q {
                    for i in 0..q {
                        for j in 0..q {
                            tally.check(f, (a, i), (b, j));
                        }
                    }
                }
            }
        }
        VerifyMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for a in 0..q {
                for _ in 0..samples {
                    let i = rng.gen_range(0..q);
                    let j = (i + rng.gen_range(1..q)) % q;
                    tally.check(f, (a, i), (a, j));
                }
                for b in a + 1..q {
                    for _ in 0..samples {
                        let i = rng.gen_range(0..q);
                        let j = rng.gen_range(0..q);
                        tally.check(f, (a, i), (b, j));
                    }
                }
            }
        }
    }

    Ok(VerifyReport {
        mode,
        q,
        passed: standard_basis_ok && tally.failure_count == 0,
        pairs_checked: tally.pairs,
        histogram: tally.histogram,
        standard_basis_ok,
        failures: tally.failures,
        failure_count: tally.failure_count,
    })
}
