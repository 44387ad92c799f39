//! Exact membership oracles for the cones sandwiched around `CP^n` and
//! `COP^n`, each returning a re-verifiable certificate.

mod copositive;
mod dual;
mod sample;
mod sandwich;

use std::fmt;

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{inner_product, SymMatrix};
use crate::patterns::{generator_e, Pair};
use crate::psd::{psd_check, PsdCertificate};
use crate::scalar::{self, Scalar};

pub use copositive::{copositive_min, SimplexMinResult, SupportOutcome, SupportRecord};
pub use dual::{
    decompose_dual_dd_plus, decompose_dual_sdd_plus, dual_dd_summand_violation,
    dual_sdd_summand_violation,
};
pub use sample::{random_symmetric, sample_member, Sampler};
pub use sandwich::{
    check_sandwich_sampled, sandwich_check, ConeOracle, SandwichReport, SandwichViolation,
};

/// Default largest order for which copositivity is decided by enumerating
/// all `2^n - 1` supports.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

/// Largest order at which `CP^n = DNN^n` and `SPN^n = COP^n`.
pub const SMALL_ORDER_LIMIT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeKind {
    Nonneg,
    DDPlus,
    SDDPlus,
    DualDDPlus,
    DualSDDPlus,
    Psd,
    Dnn,
    Cop,
    Spn,
    Cp,
}

impl ConeKind {
    pub const ALL: [ConeKind; 10] = [
        ConeKind::Nonneg,
        ConeKind::DDPlus,
        ConeKind::SDDPlus,
        ConeKind::DualDDPlus,
        ConeKind::DualSDDPlus,
        ConeKind::Psd,
        ConeKind::Dnn,
        ConeKind::Cop,
        ConeKind::Spn,
        ConeKind::Cp,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            ConeKind::Nonneg => "n",
            ConeKind::DDPlus => "ddp",
            ConeKind::SDDPlus => "sddp",
            ConeKind::DualDDPlus => "ddp-dual",
            ConeKind::DualSDDPlus => "sddp-dual",
            ConeKind::Psd => "psd",
            ConeKind::Dnn => "dnn",
            ConeKind::Cop => "cop",
            ConeKind::Spn => "spn4",
            ConeKind::Cp => "cp4",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.cli_name() == name)
    }
}

/// Serialized under the command-line name.
impl Serialize for ConeKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.cli_name())
    }
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeKind::Nonneg => "N",
            ConeKind::DDPlus => "DD+",
            ConeKind::SDDPlus => "SDD+",
            ConeKind::DualDDPlus => "(DD+)*",
            ConeKind::DualSDDPlus => "(SDD+)*",
            ConeKind::Psd => "S+",
            ConeKind::Dnn => "DNN",
            ConeKind::Cop => "COP",
            ConeKind::Spn => "SPN",
            ConeKind::Cp => "CP",
        })
    }
}

/// A cone of a fixed order. `Cp` and `Spn` exist only for `n ≤ 4`, where
/// they coincide with `Dnn` and `Cop`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeId {
    kind: ConeKind,
    n: usize,
    enumeration_limit: usize,
}

impl ConeId {
    pub fn new(kind: ConeKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if matches!(kind, ConeKind::Cp | ConeKind::Spn) && n > SMALL_ORDER_LIMIT {
            return Err(Error::UnsupportedOrder {
                cone: kind,
                n,
                reason: "membership is NP-hard in general; exact oracles exist only for n <= 4",
            });
        }
        Ok(Self {
            kind,
            n,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        })
    }

    /// Overrides the copositivity enumeration limit (cost grows as `2^n`).
    pub fn with_enumeration_limit(mut self, limit: usize) -> Self {
        self.enumeration_limit = limit;
        self
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn enumeration_limit(&self) -> usize {
        self.enumeration_limit
    }

    pub fn member(&self, a: &SymMatrix) -> Result<MembershipCertificate> {
        if a.order() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: a.order(),
            });
        }
        let cert = match self.kind {
            ConeKind::Nonneg => member_nonneg(a),
            ConeKind::DDPlus => member_dd_plus(a),
            ConeKind::SDDPlus => member_sdd_plus(a),
            ConeKind::DualDDPlus => dual::member_dual_dd_plus(a),
            ConeKind::DualSDDPlus => dual::member_dual_sdd_plus(a),
            ConeKind::Psd => member_psd(a),
            ConeKind::Dnn => member_dnn(a),
            ConeKind::Cop => member_cop(a, self.enumeration_limit)?,
            ConeKind::Cp => member_cp_small(a)?,
            ConeKind::Spn => member_spn_small(a, self.enumeration_limit)?,
        };
        cert.verify(a)?;
        Ok(cert)
    }

    pub fn contains(&self, a: &SymMatrix) -> Result<bool> {
        Ok(self.member(a)?.is_member())
    }
}

impl fmt::Display for ConeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.kind, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every entry checked nonnegative.
    Entrywise,
    NegativeEntry {
        pair: Pair,
        #[serde(with = "scalar::serde_scalar")]
        value: Scalar,
    },
    /// `A = Σ λ_kl E_kl` with `λ ≥ 0`.
    GeneratorWeights {
        weights: Vec<Weight>,
    },
    /// `A_ii < Σ_{j≠i} A_ij`.
    DominanceViolated {
        row: usize,
        #[serde(with = "scalar::serde_scalar")]
        diagonal: Scalar,
        #[serde(with = "scalar::serde_scalar")]
        off_diagonal_sum: Scalar,
    },
    /// PSD certificate of the comparison matrix `M(A)`.
    Comparison {
        certificate: PsdCertificate,
    },
    Psd {
        certificate: PsdCertificate,
    },
    /// `A = B + N` with `B` in the first summand of the dual description and
    /// `N ≥ 0`.
    Decomposition {
        b: SymMatrix,
        n: SymMatrix,
    },
    /// `W` in the predual cone with `⟨A, W⟩ < 0`.
    Separating {
        pair: Pair,
        witness: SymMatrix,
        #[serde(with = "scalar::serde_scalar")]
        value: Scalar,
    },
    SimplexMin {
        result: SimplexMinResult,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weight {
    pub pair: Pair,
    #[serde(with = "scalar::serde_scalar")]
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub cone: ConeKind,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl MembershipCertificate {
    fn member(cone: ConeKind, evidence: Evidence) -> Self {
        Self {
            cone,
            verdict: Verdict::Member,
            evidence,
        }
    }

    fn non_member(cone: ConeKind, evidence: Evidence) -> Self {
        Self {
            cone,
            verdict: Verdict::NonMember,
            evidence,
        }
    }

    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Re-checks the evidence against `a`. Member evidence must reconstruct or
    /// certify `a`; non-member evidence must exhibit a violated inequality.
    pub fn verify(&self, a: &SymMatrix) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidCertificate(format!("{}: {m}", self.cone)));
        let n = a.order();
        match (&self.verdict, &self.evidence) {
            (Verdict::Member, Evidence::Entrywise) => match a.first_negative() {
                None => Ok(()),
                Some((i, j)) => fail(format!("negative entry at ({},{})", i + 1, j + 1)),
            },
            (Verdict::NonMember, Evidence::NegativeEntry { pair, value }) => {
                if a.at(*pair) == value && value.is_negative() {
                    Ok(())
                } else {
                    fail(format!("entry {pair} is not the recorded negative value"))
                }
            }
            (Verdict::Member, Evidence::GeneratorWeights { weights }) => {
                let mut acc = SymMatrix::zeros(n);
                for w in weights {
                    if w.weight.is_negative() {
                        return fail(format!("negative weight on E{}", w.pair));
                    }
                    acc.add_scaled(&w.weight, &generator_e(n, w.pair.i, w.pair.j)?)?;
                }
                if &acc == a {
                    Ok(())
                } else {
                    fail("generator weights do not reconstruct the matrix".into())
                }
            }
            (
                Verdict::NonMember,
                Evidence::DominanceViolated {
                    row,
                    diagonal,
                    off_diagonal_sum,
                },
            ) => {
                let i = row - 1;
                let sum: Scalar = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| a.get(i, j).clone())
                    .sum();
                if a.get(i, i) == diagonal
                    && &sum == off_diagonal_sum
                    && diagonal < off_diagonal_sum
                {
                    Ok(())
                } else {
                    fail(format!("row {row} is not a dominance violation"))
                }
            }
            (verdict, Evidence::Comparison { certificate }) => {
                let m = a.comparison();
                certificate.verify(&m)?;
                match (verdict, certificate.is_psd()) {
                    (Verdict::Member, true) if a.first_negative().is_none() => Ok(()),
                    (Verdict::NonMember, false) => Ok(()),
                    _ => fail("comparison certificate does not support the verdict".into()),
                }
            }
            (verdict, Evidence::Psd { certificate }) => {
                certificate.verify(a)?;
                let nonneg_required = matches!(self.cone, ConeKind::Dnn | ConeKind::Cp);
                match (verdict, certificate.is_psd()) {
                    (Verdict::Member, true) if !nonneg_required || a.first_negative().is_none() => {
                        Ok(())
                    }
                    (Verdict::NonMember, false) => Ok(()),
                    _ => fail("PSD certificate does not support the verdict".into()),
                }
            }
            (Verdict::Member, Evidence::Decomposition { b, n: nn }) => {
                if &b.try_add(nn)? != a {
                    return fail("B + N differs from A".into());
                }
                if let Some((i, j)) = nn.first_negative() {
                    return fail(format!("N has a negative entry at ({},{})", i + 1, j + 1));
                }
                let violation = match self.cone {
                    ConeKind::DualDDPlus => dual_dd_summand_violation(b),
                    ConeKind::DualSDDPlus => dual_sdd_summand_violation(b),
                    _ => {
                        return fail(
                            "decomposition evidence for a cone without a sum description".into(),
                        )
                    }
                };
                match violation {
                    None => Ok(()),
                    Some(p) => fail(format!("B violates its summand condition at {p}")),
                }
            }
            (Verdict::NonMember, Evidence::Separating { witness, value, .. }) => {
                let predual = match self.cone {
                    ConeKind::DualDDPlus => member_dd_plus(witness),
                    ConeKind::DualSDDPlus => member_sdd_plus(witness),
                    _ => {
                        return fail(
                            "separating evidence for a cone without a predual oracle".into(),
                        )
                    }
                };
                predual.verify(witness)?;
                if !predual.is_member() {
                    return fail("separating matrix is not in the predual cone".into());
                }
                let ip = inner_product(a, witness)?;
                if &ip == value && ip.is_negative() {
                    Ok(())
                } else {
                    fail("separating inner product is not the recorded negative value".into())
                }
            }
            (verdict, Evidence::SimplexMin { result }) => {
                result.verify(a)?;
                match (verdict, result.minimum.is_negative()) {
                    (Verdict::Member, false) | (Verdict::NonMember, true) => Ok(()),
                    _ => fail("simplex minimum does not support the verdict".into()),
                }
            }
            _ => fail("evidence kind does not match the verdict".into()),
        }
    }
}

pub fn member_nonneg(a: &SymMatrix) -> MembershipCertificate {
    match a.first_negative() {
        None => MembershipCertificate::member(ConeKind::Nonneg, Evidence::Entrywise),
        Some((i, j)) => MembershipCertificate::non_member(
            ConeKind::Nonneg,
            Evidence::NegativeEntry {
                pair: Pair::new(i + 1, j + 1),
                value: a.get(i, j).clone(),
            },
        ),
    }
}

/// Weights `λ_kl = A_kl` for `k < l` and `λ_kk = (A_kk − Σ_{j≠k} A_kj) / 4`.
pub fn member_dd_plus(a: &SymMatrix) -> MembershipCertificate {
    let n = a.order();
    if let Some((i, j)) = a.first_negative() {
        return MembershipCertificate::non_member(
            ConeKind::DDPlus,
            Evidence::NegativeEntry {
                pair: Pair::new(i + 1, j + 1),
                value: a.get(i, j).clone(),
            },
        );
    }
    let mut weights = Vec::new();
    for k in 0..n {
        let off: Scalar = (0..n)
            .filter(|&j| j != k)
            .map(|j| a.get(k, j).clone())
            .sum();
        let slack = a.get(k, k) - &off;
        if slack.is_negative() {
            return MembershipCertificate::non_member(
                ConeKind::DDPlus,
                Evidence::DominanceViolated {
                    row: k + 1,
                    diagonal: a.get(k, k).clone(),
                    off_diagonal_sum: off,
                },
            );
        }
        if !slack.is_zero() {
            weights.push(Weight {
                pair: Pair::new(k + 1, k + 1),
                weight: slack / scalar::int(4),
            });
        }
        for l in k + 1..n {
            if !a.get(k, l).is_zero() {
                weights.push(Weight {
                    pair: Pair::new(k + 1, l + 1),
                    weight: a.get(k, l).clone(),
                });
            }
        }
    }
    weights.sort_by_key(|w| w.pair);
    MembershipCertificate::member(ConeKind::DDPlus, Evidence::GeneratorWeights { weights })
}

/// `A ≥ 0` and its comparison matrix is PSD.
pub fn member_sdd_plus(a: &SymMatrix) -> MembershipCertificate {
    if let Some((i, j)) = a.first_negative() {
        return MembershipCertificate::non_member(
            ConeKind::SDDPlus,
            Evidence::NegativeEntry {
                pair: Pair::new(i + 1, j + 1),
                value: a.get(i, j).clone(),
            },
        );
    }
    let certificate = psd_check(&a.comparison());
    let verdict = if certificate.is_psd() {
        Verdict::Member
    } else {
        Verdict::NonMember
    };
    MembershipCertificate {
        cone: ConeKind::SDDPlus,
        verdict,
        evidence: Evidence::Comparison { certificate },
    }
}

pub fn member_psd(a: &SymMatrix) -> MembershipCertificate {
    let certificate = psd_check(a);
    let verdict = if certificate.is_psd() {
        Verdict::Member
    } else {
        Verdict::NonMember
    };
    MembershipCertificate {
        cone: ConeKind::Psd,
        verdict,
        evidence: Evidence::Psd { certificate },
    }
}

pub fn member_dnn(a: &SymMatrix) -> MembershipCertificate {
    dnn_as(ConeKind::Dnn, a)
}

fn dnn_as(cone: ConeKind, a: &SymMatrix) -> MembershipCertificate {
    if let Some((i, j)) = a.first_negative() {
        return MembershipCertificate::non_member(
            cone,
            Evidence::NegativeEntry {
                pair: Pair::new(i + 1, j + 1),
                value: a.get(i, j).clone(),
            },
        );
    }
    let certificate = psd_check(a);
    let verdict = if certificate.is_psd() {
        Verdict::Member
    } else {
        Verdict::NonMember
    };
    MembershipCertificate {
        cone,
        verdict,
        evidence: Evidence::Psd { certificate },
    }
}

pub fn member_cop(a: &SymMatrix, limit: usize) -> Result<MembershipCertificate> {
    cop_as(ConeKind::Cop, a, limit)
}

fn cop_as(cone: ConeKind, a: &SymMatrix, limit: usize) -> Result<MembershipCertificate> {
    let result = copositive_min(a, limit)?;
    let verdict = if result.minimum.is_negative() {
        Verdict::NonMember
    } else {
        Verdict::Member
    };
    Ok(MembershipCertificate {
        cone,
        verdict,
        evidence: Evidence::SimplexMin { result },
    })
}

fn small_order(cone: ConeKind, n: usize) -> Result<()> {
    if n > SMALL_ORDER_LIMIT {
        return Err(Error::UnsupportedOrder {
            cone,
            n,
            reason: "membership is NP-hard in general; exact oracles exist only for n <= 4",
        });
    }
    Ok(())
}

/// `CP^n` for `n ≤ 4`, decided as `DNN^n`.
pub fn member_cp_small(a: &SymMatrix) -> Result<MembershipCertificate> {
    small_order(ConeKind::Cp, a.order())?;
    Ok(dnn_as(ConeKind::Cp, a))
}

/// `SPN^n` for `n ≤ 4`, decided as `COP^n`.
pub fn member_spn_small(a: &SymMatrix, limit: usize) -> Result<MembershipCertificate> {
    small_order(ConeKind::Spn, a.order())?;
    cop_as(ConeKind::Spn, a, limit)
}

pub use dual::{member_dual_dd_plus, member_dual_sdd_plus};

#[cfg(test)]
mod tests;
