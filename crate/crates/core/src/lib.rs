//! Longest chains of faces for matrix cones sandwiched between `DD_+^n` and
//! `N^n` (and between `N^n` and `(SDD_+^n)^*`), with exact certificates for
//! every membership, strict inclusion, dimension and polyhedrality claim.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod chains;
pub mod cones;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod patterns;
pub mod psd;
pub mod report;
pub mod scalar;

pub use chains::{build_chain_cop, build_chain_cp, Chain, ChainOrdering, Face, Side};
pub use cones::{ConeId, ConeKind, MembershipCertificate};
pub use error::{Error, Result};
pub use matrix::{inner_product, triangular, SymMatrix};
pub use patterns::{IndexSet, Pair};
pub use psd::{psd_check, PsdCertificate};
pub use scalar::Scalar;
