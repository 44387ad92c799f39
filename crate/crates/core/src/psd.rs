//! Exact positive-semidefiniteness certificates via pivoted LDLᵀ.
//!
//! A PSD verdict carries `P A Pᵀ = L D Lᵀ` with `L` unit lower triangular and
//! `D ≥ 0`; a negative verdict carries a vector `x` with `xᵀ A x < 0`. Both
//! are re-checked by [`PsdCertificate::verify`] before [`psd_check`] returns.

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PsdCertificate {
    Psd {
        /// Row `k` of `P A Pᵀ` is row `perm[k]` of `A`.
        perm: Vec<usize>,
        /// Strictly lower part of `L`, row by row (`lower[i].len() == i`).
        #[serde(serialize_with = "serialize_rows")]
        lower: Vec<Vec<Scalar>>,
        #[serde(with = "scalar::serde_scalars")]
        diag: Vec<Scalar>,
    },
    NotPsd {
        #[serde(with = "scalar::serde_scalars")]
        witness: Vec<Scalar>,
        #[serde(with = "scalar::serde_scalar")]
        value: Scalar,
    },
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(scalar::format).collect())
        .collect();
    rows.serialize(s)
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCertificate::Psd { .. })
    }

    /// Re-checks the certificate against `a` using only multiplication and
    /// comparison; independent of the factorization routine.
    pub fn verify(&self, a: &SymMatrix) -> Result<()> {
        let n = a.order();
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        match self {
            PsdCertificate::Psd { perm, lower, diag } => {
                if perm.len() != n || lower.len() != n || diag.len() != n {
                    return bad("factor sizes do not match the matrix order".into());
                }
                let mut seen = vec![false; n];
                for &p in perm {
                    if p >= n || seen[p] {
                        return bad(format!("{perm:?} is not a permutation"));
                    }
                    seen[p] = true;
                }
                if let Some(k) = diag.iter().position(Signed::is_negative) {
                    return bad(format!("D[{k}] is negative"));
                }
                let l = |i: usize, k: usize| -> Scalar {
                    if i == k {
                        scalar::one()
                    } else if k < i {
                        lower[i][k].clone()
                    } else {
                        Scalar::zero()
                    }
                };
                for (i, row) in lower.iter().enumerate() {
                    if row.len() != i {
                        return bad(format!("row {i} of L has {} entries", row.len()));
                    }
                }
                for i in 0..n {
                    for j in 0..=i {
                        let mut acc = Scalar::zero();
                        for (k, d) in diag.iter().enumerate().take(j + 1) {
                            if d.is_zero() {
                                continue;
                            }
                            acc += l(i, k) * d * l(j, k);
                        }
                        if &acc != a.get(perm[i], perm[j]) {
                            return bad(format!("(LDLᵀ)[{i}][{j}] differs from (PAPᵀ)[{i}][{j}]"));
                        }
                    }
                }
                Ok(())
            }
            PsdCertificate::NotPsd { witness, value } => {
                let q = a.quadratic_form(witness)?;
                if &q != value {
                    return bad("recorded value differs from xᵀAx".into());
                }
                if !q.is_negative() {
                    return bad("xᵀAx is not negative".into());
                }
                Ok(())
            }
        }
    }
}

/// Decides `A ∈ S_+^n` exactly.
///
/// Pivots on the largest remaining diagonal entry. When every remaining
/// diagonal entry is zero but some off-diagonal entry is not, the 2x2 block
/// `[[0, s], [s, 0]]` yields the witness directly.
pub fn psd_check(a: &SymMatrix) -> PsdCertificate {
    let cert = factor(a);
    if let Err(e) = cert.verify(a) {
        panic!("internal error: LDL certificate for {a} failed verification: {e}");
    }
    cert
}

#[allow(clippy::needless_range_loop)]
fn factor(a: &SymMatrix) -> PsdCertificate {
    let n = a.order();
    let mut w = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower: Vec<Vec<Scalar>> = (0..n).map(|i| vec![Scalar::zero(); i]).collect();
    let mut diag = vec![Scalar::zero(); n];

    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| w[x][x].cmp(&w[y][y]).then(y.cmp(&x)))
            .expect("non-empty range");
        let pivot = w[p][p].clone();
        if pivot.is_negative() {
            let mut y = vec![Scalar::zero(); n];
            y[p] = scalar::one();
            return not_psd(a, &perm, &lower, k, y);
        }
        if pivot.is_zero() {
            // The largest pivot is zero, but smaller ones may be negative.
            if let Some(i) = (k..n).find(|&i| w[i][i].is_negative()) {
                let mut y = vec![Scalar::zero(); n];
                y[i] = scalar::one();
                return not_psd(a, &perm, &lower, k, y);
            }
            let off = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w[i][j].is_zero());
            return match off {
                Some((i, j)) => {
                    let mut y = vec![Scalar::zero(); n];
                    y[i] = scalar::one();
                    y[j] = if w[i][j].is_positive() {
                        scalar::int(-1)
                    } else {
                        scalar::one()
                    };
                    not_psd(a, &perm, &lower, k, y)
                }
                // Schur complement is zero: remaining pivots are all zero.
                None => PsdCertificate::Psd { perm, lower, diag },
            };
        }
        if p != k {
            w.swap(k, p);
            for row in w.iter_mut() {
                row.swap(k, p);
            }
            perm.swap(k, p);
            for c in 0..k {
                let t = std::mem::take(&mut lower[k][c]);
                lower[k][c] = std::mem::replace(&mut lower[p][c], t);
            }
        }
        let col: Vec<Scalar> = (k + 1..n).map(|i| &w[i][k] / &pivot).collect();
        for (off_i, li) in col.iter().enumerate() {
            let i = k + 1 + off_i;
            if li.is_zero() {
                continue;
            }
            for j in k + 1..=i {
                let delta = li * &w[k][j];
                w[i][j] -= &delta;
                if i != j {
                    w[j][i] = w[i][j].clone();
                }
            }
        }
        for (off_i, li) in col.into_iter().enumerate() {
            lower[k + 1 + off_i][k] = li;
        }
        diag[k] = pivot;
    }
    PsdCertificate::Psd { perm, lower, diag }
}

/// Lifts a Schur-complement witness `y` (supported on indices `>= k`) back to
/// the original coordinates by solving `Lᵀ x' = y` and undoing the permutation.
fn not_psd(
    a: &SymMatrix,
    perm: &[usize],
    lower: &[Vec<Scalar>],
    k: usize,
    y: Vec<Scalar>,
) -> PsdCertificate {
    let n = a.order();
    let mut xp = y;
    for i in (0..k).rev() {
        let mut s = xp[i].clone();
        for m in i + 1..n {
            if !xp[m].is_zero() && !lower[m][i].is_zero() {
                s -= &lower[m][i] * &xp[m];
            }
        }
        xp[i] = s;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, v) in xp.into_iter().enumerate() {
        x[perm[i]] = v;
    }
    let value = a.quadratic_form(&x).expect("witness has matrix order");
    PsdCertificate::NotPsd { witness: x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn rank_one_gram() {
        let a = SymMatrix::from_i64(&[&[1, 1], &[1, 1]]).unwrap();
        match psd_check(&a) {
            PsdCertificate::Psd { diag, .. } => assert_eq!(diag, vec![int(1), int(0)]),
            c => panic!("expected psd, got {c:?}"),
        }
    }

    #[test]
    fn zero_diagonal_forces_witness() {
        let a = SymMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        match psd_check(&a) {
            PsdCertificate::NotPsd { witness, value } => {
                assert_eq!(witness, vec![int(1), int(-1)]);
                assert_eq!(value, int(-2));
            }
            c => panic!("expected not psd, got {c:?}"),
        }
    }

    #[test]
    fn negative_pivot_behind_zero_maximum() {
        for a in [
            SymMatrix::from_i64(&[&[0, 1, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap(),
            SymMatrix::parse_symmat("3\n-3/2\n0 0\n4/3 0 2\n").unwrap(),
        ] {
            assert!(!psd_check(&a).is_psd(), "{a}");
        }
    }

    #[test]
    fn indefinite_two_by_two() {
        let a = SymMatrix::from_i64(&[&[1, 2], &[2, 1]]).unwrap();
        assert!(!psd_check(&a).is_psd());
    }

    #[test]
    fn negative_diagonal_and_zero_matrix() {
        let a = SymMatrix::from_i64(&[&[2, 0, 0], &[0, -1, 0], &[0, 0, 3]]).unwrap();
        assert!(!psd_check(&a).is_psd());
        assert!(psd_check(&SymMatrix::zeros(4)).is_psd());
    }

    #[test]
    fn pivoting_with_singular_leading_minor() {
        // Leading entry is zero but the matrix is PSD.
        let a = SymMatrix::from_i64(&[&[0, 0, 0], &[0, 4, 2], &[0, 2, 1]]).unwrap();
        assert!(psd_check(&a).is_psd());
        // Zero leading entry coupled to the rest: not PSD.
        let b = SymMatrix::from_i64(&[&[0, 1, 0], &[1, 4, 2], &[0, 2, 1]]).unwrap();
        assert!(!psd_check(&b).is_psd());
    }

    #[test]
    fn witness_lifted_through_elimination() {
        // Positive pivots first, then a negative Schur complement.
        let a = SymMatrix::from_i64(&[&[4, 2, 2], &[2, 2, 3], &[2, 3, 2]]).unwrap();
        let cert = psd_check(&a);
        assert!(!cert.is_psd());
        cert.verify(&a).unwrap();
    }

    #[test]
    fn verify_rejects_tampered_certificates() {
        let a = SymMatrix::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        let mut cert = psd_check(&a);
        if let PsdCertificate::Psd { diag, .. } = &mut cert {
            diag[1] += int(1);
        }
        assert!(cert.verify(&a).is_err());
        let fake = PsdCertificate::NotPsd {
            witness: vec![int(1), int(0)],
            value: int(2),
        };
        assert!(fake.verify(&a).is_err());
    }
}
