//! Exact construction, verification and structural audit of complete sets of
//! mutually unbiased bases (MUBs) in prime-power dimensions.
//!
//! Every family is stored as integer exponent vectors over `Z_m`: an entry `e`
//! at position `x` stands for the complex amplitude `ω_m^e / √q`. All checks
//! reduce to exact integer arithmetic on those exponents, so nothing in this
//! crate touches floating point.
//!
//! The crate is `no_std` and needs only `alloc`. IO, file formats and the
//! command-line front end live in the `mubs` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod arith;
mod error;
mod poly;

pub mod audit;
pub mod construct;
pub mod family;
pub mod field;
pub mod geometry;
pub mod planar;
pub mod ring;
pub mod verify;

pub use audit::{audit_family, AuditReport, DerivedSets, ExponentSet};
pub use construct::{build, Algebra, build_alltop, build_galois_ring, build_planar, build_symplectic};
pub use error::Error;
pub use family::{Construction, ExponentVector, FamilyParams, MubFamily};
pub use field::{Field, FieldElement};
pub use geometry::{PointKind, ProjectivePoint};
pub use planar::{planar_check, PlanarFunction, Planarity};
pub use ring::{GaloisRing, RingElement};
pub use verify::{inner_product_sq, verify_family, InnerProductValue, VerifyMode, VerifyReport};

pub type Result<T, E = Error> = core::result::Result<T, E>;
