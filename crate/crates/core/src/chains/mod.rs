//! The two longest chains of pattern faces and the checks that each
//! inclusion along them is strict.
//!
//! CP side (`DD_+^n ⊆ K ⊆ N^n`): `K[I_nn] ⊊ K[I_{n-1,n-1}] ⊊ K[I_{n-1,n}] ⊊ … ⊊ K[I_1n] ⊊ K`,
//! with `E_ij ∈ K[I_{i,j+1}] \ K[I_ij]` separating consecutive faces.
//!
//! COP side (`N^n ⊆ K ⊆ (SDD_+^n)^*`): `K[J_nn] ⊊ K[J_{n-1,n}] ⊊ K[J_{n-1,n-1}] ⊊ … ⊊ K[J_11] ⊊ K`,
//! with `E[J_{i,j-1}] ∈ K[J_{i,j-1}] \ K[J_ij]`.

mod face_axiom;
mod replay;

use std::fmt;

use num::Zero;
use serde::Serialize;

use crate::cones::{member_dd_plus, member_nonneg, ConeId, ConeKind};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::patterns::{self, build_i, build_j, generator_e, pattern_matrix_e, IndexSet, Pair};

pub use face_axiom::{face_axiom_test, FaceAxiomReport, FaceViolation};
pub use replay::{
    equality_collapse_check, replay_remark_cop_order, replay_remark_dual_ddplus, CollapseReport,
    Fact, ReplayVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    #[serde(rename = "cp_side")]
    Cp,
    #[serde(rename = "cop_side")]
    Cop,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Cp => "cp_side",
            Side::Cop => "cop_side",
        }
    }

    /// Whether the built-in cone sits in this side's sandwich.
    pub fn admits(self, kind: ConeKind) -> bool {
        match self {
            Side::Cp => matches!(
                kind,
                ConeKind::Nonneg
                    | ConeKind::DDPlus
                    | ConeKind::SDDPlus
                    | ConeKind::Cp
                    | ConeKind::Dnn
            ),
            Side::Cop => matches!(
                kind,
                ConeKind::Nonneg | ConeKind::Spn | ConeKind::Cop | ConeKind::DualSDDPlus
            ),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainOrdering {
    Paper,
    /// Off-diagonal entries zeroed first, then the diagonal (CP side only).
    Legacy,
}

/// `K[pattern] = {A ∈ K : A_ij = 0 for (i,j) ∈ pattern}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub cone: ConeId,
    pub pattern: IndexSet,
}

impl Face {
    pub fn new(cone: ConeId, pattern: IndexSet) -> Result<Self> {
        if cone.order() != pattern.order() {
            return Err(Error::DimensionMismatch {
                expected: cone.order(),
                actual: pattern.order(),
            });
        }
        Ok(Self { cone, pattern })
    }

    pub fn order(&self) -> usize {
        self.cone.order()
    }

    pub fn contains(&self, a: &SymMatrix) -> Result<bool> {
        Ok(self.pattern.annihilates(a) && self.cone.contains(a)?)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.cone, self.pattern)
    }
}

/// Faces from smallest to largest; `witnesses[k]` lies in `faces[k + 1]`
/// but not in `faces[k]`.
#[derive(Clone, Debug)]
pub struct Chain {
    pub side: Side,
    pub ordering: ChainOrdering,
    pub cone: ConeId,
    pub patterns: Vec<IndexSet>,
    /// `(i, j)` label of each pattern in the default ordering (`None` for legacy).
    pub labels: Vec<Option<(usize, usize)>>,
    pub witnesses: Vec<SymMatrix>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn order(&self) -> usize {
        self.cone.order()
    }

    pub fn face(&self, k: usize) -> Face {
        Face {
            cone: self.cone,
            pattern: self.patterns[k].clone(),
        }
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.len()).map(|k| self.face(k))
    }

    /// The single pair zeroed when stepping from face `k + 1` down to face `k`.
    pub fn added_pair(&self, k: usize) -> Pair {
        let diff = self.patterns[k].difference(&self.patterns[k + 1]);
        assert_eq!(diff.len(), 1, "consecutive patterns differ by one pair");
        diff[0]
    }

    /// Checks step `k` structurally: the witness lies in the cone via its
    /// generator family, vanishes on the larger face's pattern, and is
    /// nonzero at the added pair.
    pub fn verify_step(&self, k: usize) -> WitnessVerdict {
        let witness = &self.witnesses[k];
        let added = self.added_pair(k);
        check_witness(self.side, witness, &self.patterns[k + 1], added)
    }
}

fn check_side(side: Side, cone: &ConeId) -> Result<()> {
    if side.admits(cone.kind()) {
        Ok(())
    } else {
        Err(Error::OutsideSandwich {
            cone: cone.kind(),
            side: side.label(),
        })
    }
}

/// The default-order CP-side chain of `cone`.
pub fn build_chain_cp(cone: &ConeId) -> Result<Chain> {
    build_chain_cp_with(cone, ChainOrdering::Paper)
}

pub fn build_chain_cp_with(cone: &ConeId, ordering: ChainOrdering) -> Result<Chain> {
    check_side(Side::Cp, cone)?;
    let n = cone.order();
    let (mut patterns, mut labels): (Vec<IndexSet>, Vec<Option<(usize, usize)>>) = match ordering {
        ChainOrdering::Paper => patterns::cp_sequence(n)
            .into_iter()
            .map(|(i, j)| Ok((build_i(n, i, j)?, Some((i, j)))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip(),
        ChainOrdering::Legacy => patterns::legacy_sequence(n)
            .into_iter()
            .map(|p| (p, None))
            .collect(),
    };
    patterns.reverse();
    labels.reverse();
    let witnesses = (0..patterns.len() - 1)
        .map(|k| {
            let p = patterns[k].difference(&patterns[k + 1])[0];
            generator_e(n, p.i, p.j)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Chain {
        side: Side::Cp,
        ordering,
        cone: *cone,
        patterns,
        labels,
        witnesses,
    })
}

/// The default-order COP-side chain of `cone`.
pub fn build_chain_cop(cone: &ConeId) -> Result<Chain> {
    check_side(Side::Cop, cone)?;
    let n = cone.order();
    let (mut patterns, mut labels): (Vec<IndexSet>, Vec<Option<(usize, usize)>>) =
        patterns::cop_sequence(n)
            .into_iter()
            .map(|(i, j)| Ok((build_j(n, i, j)?, Some((i, j)))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
    patterns.reverse();
    labels.reverse();
    let witnesses = (0..patterns.len() - 1)
        .map(|k| pattern_matrix_e(&patterns[k + 1]))
        .collect();
    Ok(Chain {
        side: Side::Cop,
        ordering: ChainOrdering::Paper,
        cone: *cone,
        patterns,
        labels,
        witnesses,
    })
}

pub fn build_chain(side: Side, cone: &ConeId, ordering: ChainOrdering) -> Result<Chain> {
    match (side, ordering) {
        (Side::Cp, o) => build_chain_cp_with(cone, o),
        (Side::Cop, ChainOrdering::Paper) => build_chain_cop(cone),
        (Side::Cop, ChainOrdering::Legacy) => Err(Error::InvalidArgument(
            "the legacy ordering exists only on the CP side".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessClause {
    /// (a) the witness is in the cone.
    InCone,
    /// (b) it vanishes on the larger face's pattern.
    ZeroOnLargerPattern,
    /// (c) it is nonzero at the added pair, so it leaves the smaller face.
    NonzeroAtAddedPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessVerdict {
    pub added: Pair,
    pub failed: Option<(WitnessClause, String)>,
}

impl WitnessVerdict {
    pub fn passed(&self) -> bool {
        self.failed.is_none()
    }
}

fn check_witness(
    side: Side,
    witness: &SymMatrix,
    larger: &IndexSet,
    added: Pair,
) -> WitnessVerdict {
    let fail = |clause, msg: String| WitnessVerdict {
        added,
        failed: Some((clause, msg)),
    };
    let generator_cert = match side {
        Side::Cp => member_dd_plus(witness),
        Side::Cop => member_nonneg(witness),
    };
    if !generator_cert.is_member() {
        let family = if side == Side::Cp { "DD+" } else { "N" };
        return fail(
            WitnessClause::InCone,
            format!("witness {witness} is not in {family}"),
        );
    }
    if let Some(p) = larger.first_violation(witness) {
        return fail(
            WitnessClause::ZeroOnLargerPattern,
            format!("witness is nonzero at {p} of {larger}"),
        );
    }
    if witness.at(added).is_zero() {
        return fail(
            WitnessClause::NonzeroAtAddedPair,
            format!("witness vanishes at {added}"),
        );
    }
    WitnessVerdict {
        added,
        failed: None,
    }
}

/// Checks `E_ij ∈ K[I_{i,j+1}] \ K[I_ij]` for `1 ≤ i ≤ j ≤ n`.
pub fn verify_witness_cp(i: usize, j: usize, cone: &ConeId) -> Result<WitnessVerdict> {
    check_side(Side::Cp, cone)?;
    let n = cone.order();
    if i == 0 || j < i || j > n {
        return Err(Error::IndexOutOfRange {
            what: "CP witness",
            n,
            i,
            j,
        });
    }
    let witness = step_witness(Side::Cp, n, i, j)?;
    let larger = build_i(n, i, j + 1)?;
    Ok(check_witness(Side::Cp, &witness, &larger, Pair::new(i, j)))
}

/// Checks `E[J_{i,j-1}] ∈ K[J_{i,j-1}] \ K[J_ij]` for `1 ≤ i ≤ j ≤ n`.
pub fn verify_witness_cop(i: usize, j: usize, cone: &ConeId) -> Result<WitnessVerdict> {
    check_side(Side::Cop, cone)?;
    let n = cone.order();
    if i == 0 || j < i || j > n {
        return Err(Error::IndexOutOfRange {
            what: "COP witness",
            n,
            i,
            j,
        });
    }
    let larger = build_j(n, i, j - 1)?;
    let witness = step_witness(Side::Cop, n, i, j)?;
    Ok(check_witness(Side::Cop, &witness, &larger, Pair::new(i, j)))
}

/// The pattern `I_ij` (CP side) or `J_ij` (COP side), aliases included.
pub fn chain_pattern(side: Side, n: usize, i: usize, j: usize) -> Result<IndexSet> {
    match side {
        Side::Cp => build_i(n, i, j),
        Side::Cop => build_j(n, i, j),
    }
}

/// The witness separating the face with label `(i, j)` from the face just
/// above it: `E_ij` on the CP side, `E[J_{i,j-1}]` on the COP side.
pub fn step_witness(side: Side, n: usize, i: usize, j: usize) -> Result<SymMatrix> {
    if i == 0 || j < i || j > n {
        return Err(Error::IndexOutOfRange {
            what: "witness",
            n,
            i,
            j,
        });
    }
    match side {
        Side::Cp => generator_e(n, i, j),
        Side::Cop => Ok(pattern_matrix_e(&build_j(n, i, j - 1)?)),
    }
}
