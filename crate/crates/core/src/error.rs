use thiserror::Error;

use crate::cones::ConeKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected order {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("order must be positive")]
    ZeroOrder,

    #[error("index ({i},{j}) out of range for {what} at order {n}")]
    IndexOutOfRange {
        what: &'static str,
        n: usize,
        i: usize,
        j: usize,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{cone} oracle is unsupported at order {n}: {reason}")]
    UnsupportedOrder {
        cone: ConeKind,
        n: usize,
        reason: &'static str,
    },

    #[error("copositivity at order {n} exceeds the enumeration limit {limit} (undecidable at desk scale)")]
    EnumerationLimit { n: usize, limit: usize },

    #[error("matrix is not a member of {cone}")]
    NotAMember { cone: ConeKind },

    #[error("{cone} is not sandwiched for the {side} chain")]
    OutsideSandwich { cone: ConeKind, side: &'static str },

    #[error("unsupported face: {0}")]
    UnsupportedFace(String),

    #[error("certificate failed re-verification: {0}")]
    InvalidCertificate(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
