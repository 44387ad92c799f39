//! Exact minimum of `xᵀAx` over the standard simplex by support enumeration.
//!
//! For each nonempty support `S` the stationarity system
//! `A_S u = λ·1, 1ᵀu = 1` is solved exactly. A unique solution with `u > 0`
//! is a candidate with value `λ`. The minimum over the simplex is attained in
//! the relative interior of some face; if that face's system has a continuum
//! of solutions, `λ` is constant along it and the solution line exits through
//! a smaller face, so the unique-solution candidates of the sub-faces (down to
//! vertices) still reach the minimum.

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{solve, LinearSolution};
use crate::matrix::SymMatrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SupportOutcome {
    /// Unique stationary point, strictly positive on the support.
    Interior {
        #[serde(with = "scalar::serde_scalar")]
        value: Scalar,
    },
    /// Unique stationary point with some coordinate `≤ 0`.
    Exterior,
    Inconsistent,
    /// Solution continuum; the value is the common `λ` when determined.
    Continuum {
        #[serde(serialize_with = "serialize_opt")]
        value: Option<Scalar>,
    },
}

fn serialize_opt<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&scalar::format(x)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportRecord {
    /// 1-based indices.
    pub support: Vec<usize>,
    pub outcome: SupportOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexMinResult {
    #[serde(with = "scalar::serde_scalar")]
    pub minimum: Scalar,
    #[serde(with = "scalar::serde_scalars")]
    pub minimizer: Vec<Scalar>,
    /// 1-based support of the minimizer.
    pub support: Vec<usize>,
    pub transcript: Vec<SupportRecord>,
}

impl SimplexMinResult {
    /// Checks that the minimizer lies on the simplex and attains the recorded
    /// minimum, and that every interior candidate in the transcript is no
    /// smaller than it.
    pub fn verify(&self, a: &SymMatrix) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidCertificate(format!("simplex minimum: {m}")));
        let x = &self.minimizer;
        if x.len() != a.order() {
            return fail("minimizer has the wrong length");
        }
        if x.iter().any(Signed::is_negative) {
            return fail("minimizer has a negative coordinate");
        }
        if x.iter().sum::<Scalar>() != scalar::one() {
            return fail("minimizer coordinates do not sum to one");
        }
        if a.quadratic_form(x)? != self.minimum {
            return fail("xᵀAx differs from the recorded minimum");
        }
        let expected_support: Vec<usize> = (0..x.len())
            .filter(|&k| !x[k].is_zero())
            .map(|k| k + 1)
            .collect();
        if expected_support != self.support {
            return fail("support does not match the minimizer");
        }
        for rec in &self.transcript {
            if let SupportOutcome::Interior { value } = &rec.outcome {
                if value < &self.minimum {
                    return fail("transcript holds a candidate below the minimum");
                }
            }
        }
        Ok(())
    }
}

/// Minimum of `xᵀAx` over `{x ≥ 0, Σx = 1}`; refuses orders above `limit`.
pub fn copositive_min(a: &SymMatrix, limit: usize) -> Result<SimplexMinResult> {
    let n = a.order();
    if n > limit {
        return Err(Error::EnumerationLimit { n, limit });
    }
    let mut transcript = Vec::with_capacity((1usize << n) - 1);
    let mut best: Option<(Scalar, Vec<Scalar>, Vec<usize>)> = None;

    for mask in 1u64..(1u64 << n) {
        let support: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let (outcome, point) = stationary_point(a, &support);
        if let (SupportOutcome::Interior { value }, Some(u)) = (&outcome, point) {
            if best.as_ref().is_none_or(|(b, _, _)| value < b) {
                let mut x = vec![Scalar::zero(); n];
                for (&k, uk) in support.iter().zip(u) {
                    x[k] = uk;
                }
                best = Some((value.clone(), x, support.iter().map(|k| k + 1).collect()));
            }
        }
        transcript.push(SupportRecord {
            support: support.iter().map(|k| k + 1).collect(),
            outcome,
        });
    }
    // Singletons always yield interior candidates, so `best` is set.
    let (minimum, minimizer, support) = best.expect("vertices are always candidates");
    Ok(SimplexMinResult {
        minimum,
        minimizer,
        support,
        transcript,
    })
}

fn stationary_point(a: &SymMatrix, support: &[usize]) -> (SupportOutcome, Option<Vec<Scalar>>) {
    let m = support.len();
    // Unknowns (u_1..u_m, λ): A_S u − λ·1 = 0, 1ᵀu = 1.
    let mut rows = Vec::with_capacity(m + 1);
    for &r in support {
        let mut row: Vec<Scalar> = support.iter().map(|&c| a.get(r, c).clone()).collect();
        row.push(scalar::int(-1));
        rows.push(row);
    }
    let mut last = vec![scalar::one(); m];
    last.push(Scalar::zero());
    rows.push(last);
    let mut rhs = vec![Scalar::zero(); m];
    rhs.push(scalar::one());

    match solve(&rows, &rhs) {
        LinearSolution::Unique(z) => {
            let value = z[m].clone();
            let u = z[..m].to_vec();
            if u.iter().all(Signed::is_positive) {
                (SupportOutcome::Interior { value }, Some(u))
            } else {
                (SupportOutcome::Exterior, None)
            }
        }
        LinearSolution::Inconsistent => (SupportOutcome::Inconsistent, None),
        LinearSolution::Continuum {
            particular,
            determined,
        } => {
            let value = determined[m].then(|| particular[m].clone());
            (SupportOutcome::Continuum { value }, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn off_diagonal_minus_one() {
        let a = SymMatrix::from_i64(&[&[0, -1], &[-1, 0]]).unwrap();
        let r = copositive_min(&a, 8).unwrap();
        assert_eq!(r.minimum, ratio(-1, 2));
        assert_eq!(r.minimizer, vec![ratio(1, 2), ratio(1, 2)]);
        r.verify(&a).unwrap();
    }

    #[test]
    fn identity_barycenter() {
        let r = copositive_min(&SymMatrix::identity(3), 8).unwrap();
        assert_eq!(r.minimum, ratio(1, 3));
        assert_eq!(r.minimizer, vec![ratio(1, 3); 3]);
    }

    #[test]
    fn continuum_is_recorded() {
        // All-ones: every support is a continuum at value 1 except singletons.
        let a = SymMatrix::from_i64(&[&[1, 1], &[1, 1]]).unwrap();
        let r = copositive_min(&a, 8).unwrap();
        assert_eq!(r.minimum, int(1));
        assert!(r.transcript.iter().any(|t| t.outcome
            == SupportOutcome::Continuum {
                value: Some(int(1))
            }));
    }

    #[test]
    fn limit_enforced() {
        let err = copositive_min(&SymMatrix::identity(3), 2).unwrap_err();
        assert_eq!(err, Error::EnumerationLimit { n: 3, limit: 2 });
    }
}
