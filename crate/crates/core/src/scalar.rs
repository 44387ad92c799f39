//! Exact rational scalars.
//!
//! Every entry of every matrix in this crate is an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `p/q` as an exact rational. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"` or a plain integer. Zero denominators are rejected.
pub fn parse(token: &str) -> Result<Scalar, String> {
    let token = token.trim();
    match token.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
            let q =
                BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {token:?}"));
            }
            Ok(Scalar::new(p, q))
        }
        None => BigInt::from_str(token)
            .map(Scalar::from_integer)
            .map_err(|e| format!("bad integer {token:?}: {e}")),
    }
}

/// Canonical text form: an integer when the denominator is one, else `p/q`.
pub fn format(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn min(a: &Scalar, b: &Scalar) -> Scalar {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn is_nonneg(x: &Scalar) -> bool {
    !x.is_negative()
}

pub(crate) mod serde_scalar {
    use serde::Serializer;

    use super::Scalar;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(x))
    }
}

pub(crate) mod serde_scalars {
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use super::Scalar;

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::format(x))?;
        }
        seq.end()
    }
}
