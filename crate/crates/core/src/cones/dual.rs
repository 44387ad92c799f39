//! The two dual cones `(DD_+^n)^*` and `(SDD_+^n)^*`.
//!
//! Membership is decided by closed-form criteria (generator pairings for
//! `(DD_+)^*`, pairwise 2x2 copositivity for `(SDD_+)^*`); member evidence is
//! a Minkowski split `A = B + N` checked against the sum descriptions
//! `{B : B_ii + B_jj ± 2B_ij ≥ 0} + N^n` and
//! `{B : B_ii B_jj ≥ B_ij², B_ii ≥ 0} + N^n`.

use num::{Signed, Zero};

use super::{ConeKind, Evidence, MembershipCertificate, Verdict};
use crate::error::{Error, Result};
use crate::matrix::{inner_product, SymMatrix};
use crate::patterns::{generator_e, Pair};
use crate::scalar::{self, Scalar};

/// `B_ij = min(A_ij, 0)` off the diagonal, `B_ii = A_ii`, `N = A − B`.
fn canonical_split(a: &SymMatrix) -> (SymMatrix, SymMatrix) {
    let n = a.order();
    let mut b = a.clone();
    for i in 0..n {
        for j in i + 1..n {
            b.set(i, j, scalar::min(a.get(i, j), &Scalar::zero()));
        }
    }
    let nn = a.try_sub(&b).expect("same order");
    (b, nn)
}

/// First pair where `B_ii + B_jj ± 2B_ij ≥ 0` fails.
pub fn dual_dd_summand_violation(b: &SymMatrix) -> Option<Pair> {
    let n = b.order();
    for i in 0..n {
        if b.get(i, i).is_negative() {
            return Some(Pair::new(i + 1, i + 1));
        }
        for j in i + 1..n {
            let slack = b.get(i, i) + b.get(j, j) - scalar::int(2) * b.get(i, j).abs();
            if slack.is_negative() {
                return Some(Pair::new(i + 1, j + 1));
            }
        }
    }
    None
}

/// First pair where `B_ii ≥ 0` or `B_ii B_jj ≥ B_ij²` fails.
pub fn dual_sdd_summand_violation(b: &SymMatrix) -> Option<Pair> {
    let n = b.order();
    for i in 0..n {
        if b.get(i, i).is_negative() {
            return Some(Pair::new(i + 1, i + 1));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let bij = b.get(i, j);
            if b.get(i, i) * b.get(j, j) < bij * bij {
                return Some(Pair::new(i + 1, j + 1));
            }
        }
    }
    None
}

fn split_checked(
    a: &SymMatrix,
    cone: ConeKind,
    violation: fn(&SymMatrix) -> Option<Pair>,
) -> Result<(SymMatrix, SymMatrix)> {
    let (b, nn) = canonical_split(a);
    match violation(&b) {
        None => Ok((b, nn)),
        Some(_) => Err(Error::NotAMember { cone }),
    }
}

/// Splits a member of `(DD_+^n)^*` into its two summands; rejects non-members.
pub fn decompose_dual_dd_plus(a: &SymMatrix) -> Result<(SymMatrix, SymMatrix)> {
    split_checked(a, ConeKind::DualDDPlus, dual_dd_summand_violation)
}

/// Splits a member of `(SDD_+^n)^*` into its two summands; rejects non-members.
pub fn decompose_dual_sdd_plus(a: &SymMatrix) -> Result<(SymMatrix, SymMatrix)> {
    split_checked(a, ConeKind::DualSDDPlus, dual_sdd_summand_violation)
}

/// `⟨A, E_kl⟩ ≥ 0` for every generator `E_kl` of `DD_+^n`.
pub fn member_dual_dd_plus(a: &SymMatrix) -> MembershipCertificate {
    let n = a.order();
    for k in 1..=n {
        for l in k..=n {
            let e = generator_e(n, k, l).expect("indices in range");
            let value = inner_product(a, &e).expect("same order");
            if value.is_negative() {
                return MembershipCertificate {
                    cone: ConeKind::DualDDPlus,
                    verdict: Verdict::NonMember,
                    evidence: Evidence::Separating {
                        pair: Pair::new(k, l),
                        witness: e,
                        value,
                    },
                };
            }
        }
    }
    let (b, nn) = canonical_split(a);
    MembershipCertificate {
        cone: ConeKind::DualDDPlus,
        verdict: Verdict::Member,
        evidence: Evidence::Decomposition { b, n: nn },
    }
}

/// `A_ii ≥ 0` and every principal 2x2 block is copositive
/// (`A_ij ≥ 0` or `A_ii A_jj ≥ A_ij²`).
pub fn member_dual_sdd_plus(a: &SymMatrix) -> MembershipCertificate {
    let n = a.order();
    let non_member = |pair: Pair, witness: SymMatrix| {
        let value = inner_product(a, &witness).expect("same order");
        MembershipCertificate {
            cone: ConeKind::DualSDDPlus,
            verdict: Verdict::NonMember,
            evidence: Evidence::Separating {
                pair,
                witness,
                value,
            },
        }
    };
    for i in 0..n {
        if a.get(i, i).is_negative() {
            let mut w = SymMatrix::zeros(n);
            w.set(i, i, scalar::one());
            return non_member(Pair::new(i + 1, i + 1), w);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (aii, ajj, aij) = (a.get(i, i), a.get(j, j), a.get(i, j));
            if !aij.is_negative() || aii * ajj >= aij * aij {
                continue;
            }
            // Rank-one vvᵀ with v ≥ 0 on {i, j} minimizing the 2x2 form.
            let (vi, vj) = if aii.is_positive() {
                (-aij / aii, scalar::one())
            } else if ajj.is_positive() {
                (scalar::one(), -aij / ajj)
            } else {
                (scalar::one(), scalar::one())
            };
            let mut w = SymMatrix::zeros(n);
            w.set(i, i, &vi * &vi);
            w.set(j, j, &vj * &vj);
            w.set(i, j, &vi * &vj);
            return non_member(Pair::new(i + 1, j + 1), w);
        }
    }
    let (b, nn) = canonical_split(a);
    MembershipCertificate {
        cone: ConeKind::DualSDDPlus,
        verdict: Verdict::Member,
        evidence: Evidence::Decomposition { b, n: nn },
    }
}
