//! Face dimensions, polyhedrality of chain faces, and the length bounds.
//!
//! Polyhedrality is decided only for faces of the built chains. There a face
//! is non-polyhedral exactly when its free entries contain a whole principal
//! 2×2 block: the face then holds an embedded copy of the 2×2 completely
//! positive (CP side) or copositive (COP side) cone, which has infinitely
//! many extreme rays. Without such a block the face has dimension at most
//! two or is a nonnegative orthant on the free diagonal.
//!
//! The COP-side count `ℓ_poly = T_n - 2` rests on the same two-sided
//! argument as the CP side: the upper bound from the dimension ladder and the
//! lower bound from the leading non-polyhedral faces of the built chain.

mod lp;
mod rays;

use std::fmt::Write as _;

use serde::Serialize;

use crate::chains::{Face, Side};
use crate::cones::ConeKind;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::{triangular, SymMatrix};
use crate::patterns::{
    self, all_pairs, build_i, build_j, generator_e, unit_matrix, IndexSet, Pair,
};

pub use lp::{fourier_motzkin, Feasibility};
pub use rays::{
    conic_independence, conic_independence_lp, extreme_ray_family, free_block, ConicIndependence,
    RayCertificate, RayFamily, RayWeight, DEFAULT_RAY_COUNT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionResult {
    /// Rank of the generators found inside the face.
    pub lower: usize,
    /// Number of entries the pattern leaves free.
    pub upper: usize,
    pub exact: bool,
}

impl DimensionResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Generators `E_kl` and off-diagonal unit matrices that lie in the face,
/// each checked with the face's own membership test.
pub fn in_face_generators(face: &Face) -> Result<Vec<SymMatrix>> {
    let n = face.order();
    let mut found = Vec::new();
    for p in all_pairs(n) {
        let mut candidates = vec![generator_e(n, p.i, p.j)?];
        if !p.is_diagonal() {
            candidates.push(unit_matrix(n, p));
        }
        for c in candidates {
            if face.pattern.annihilates(&c) && face.contains(&c)? {
                found.push(c);
            }
        }
    }
    Ok(found)
}

pub fn face_dimension(face: &Face) -> Result<DimensionResult> {
    let upper = triangular(face.order()) - face.pattern.len();
    let vectors: Vec<Vec<_>> = in_face_generators(face)?
        .iter()
        .map(|g| g.upper().to_vec())
        .collect();
    let lower = rank(&vectors);
    debug_assert!(lower <= upper);
    Ok(DimensionResult {
        lower,
        upper,
        exact: lower == upper,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polyhedrality {
    Polyhedral,
    NonPolyhedral,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolyhedralityCertificate {
    /// The cone itself is finitely generated; the face is the cone over the
    /// listed in-face generators.
    FinitelyGenerated { generators: Vec<SymMatrix> },
    /// Every convex cone of dimension at most two is polyhedral.
    LowDimension { dimension: usize },
    /// Inside `S_+^n ∩ N^n` a zero diagonal entry forces a zero row, so the
    /// face is the nonnegative orthant on the free diagonal.
    DiagonalOrthant { generators: Vec<SymMatrix> },
    /// Conically independent extreme rays of an embedded 2×2 block.
    EmbeddedBlock {
        block: Pair,
        rays: usize,
        independent_rays: usize,
        #[serde(skip)]
        family: RayFamily,
        #[serde(skip)]
        independence: ConicIndependence,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub verdict: Polyhedrality,
    pub dimension: DimensionResult,
    pub certificate: PolyhedralityCertificate,
}

impl Classification {
    pub fn is_polyhedral(&self) -> bool {
        self.verdict == Polyhedrality::Polyhedral
    }
}

/// Side whose chains the classification rule covers for `kind`, or `None`
/// for cones that are polyhedral outright.
fn classification_side(kind: ConeKind) -> Result<Option<Side>> {
    match kind {
        ConeKind::Nonneg | ConeKind::DDPlus => Ok(None),
        ConeKind::SDDPlus | ConeKind::Cp | ConeKind::Dnn => Ok(Some(Side::Cp)),
        ConeKind::Spn | ConeKind::Cop | ConeKind::DualSDDPlus => Ok(Some(Side::Cop)),
        ConeKind::Psd | ConeKind::DualDDPlus => Err(Error::UnsupportedFace(format!(
            "{kind} has no built chain to classify against"
        ))),
    }
}

fn on_chain(pattern: &IndexSet, side: Side) -> Result<bool> {
    let n = pattern.order();
    Ok(match side {
        Side::Cp => {
            patterns::cp_sequence(n)
                .into_iter()
                .map(|(i, j)| build_i(n, i, j))
                .collect::<Result<Vec<_>>>()?
                .contains(pattern)
                || patterns::legacy_sequence(n).contains(pattern)
        }
        Side::Cop => patterns::cop_sequence(n)
            .into_iter()
            .map(|(i, j)| build_j(n, i, j))
            .collect::<Result<Vec<_>>>()?
            .contains(pattern),
    })
}

pub fn classify_polyhedral(face: &Face) -> Result<Classification> {
    classify_polyhedral_with(face, DEFAULT_RAY_COUNT)
}

/// Classifies a chain face, certifying non-polyhedrality with `ray_count`
/// conically independent extreme rays.
pub fn classify_polyhedral_with(face: &Face, ray_count: usize) -> Result<Classification> {
    let kind = face.cone.kind();
    let side = classification_side(kind)?;
    let supported = match side {
        Some(s) => on_chain(&face.pattern, s)?,
        None => {
            on_chain(&face.pattern, Side::Cp)?
                || (kind == ConeKind::Nonneg && on_chain(&face.pattern, Side::Cop)?)
        }
    };
    if !supported {
        return Err(Error::UnsupportedFace(format!(
            "{face} is not a face of a built chain"
        )));
    }
    let dimension = face_dimension(face)?;
    let polyhedral = |certificate| {
        Ok(Classification {
            verdict: Polyhedrality::Polyhedral,
            dimension,
            certificate,
        })
    };

    let Some(side) = side else {
        return polyhedral(PolyhedralityCertificate::FinitelyGenerated {
            generators: in_face_generators(face)?,
        });
    };
    if free_block(&face.pattern).is_some() {
        let family = extreme_ray_family(face, side, ray_count)?;
        let independence = conic_independence(&family.rays)?;
        if !independence.independent() {
            return Err(Error::InvalidCertificate(format!(
                "ray family of {face} is not conically independent"
            )));
        }
        let (k, l) = family.block;
        return Ok(Classification {
            verdict: Polyhedrality::NonPolyhedral,
            dimension,
            certificate: PolyhedralityCertificate::EmbeddedBlock {
                block: Pair::new(k, l),
                rays: family.rays.len(),
                independent_rays: independence.independent_count(),
                family,
                independence,
            },
        });
    }
    if dimension.exact && dimension.lower <= 2 {
        return polyhedral(PolyhedralityCertificate::LowDimension {
            dimension: dimension.lower,
        });
    }
    if side == Side::Cp {
        let generators: Vec<SymMatrix> = in_face_generators(face)?
            .into_iter()
            .filter(|g| {
                (0..g.order()).all(|i| (i + 1..g.order()).all(|j| num::Zero::is_zero(g.get(i, j))))
            })
            .collect();
        if rank(
            &generators
                .iter()
                .map(|g| g.upper().to_vec())
                .collect::<Vec<_>>(),
        ) == dimension.upper
        {
            return polyhedral(PolyhedralityCertificate::DiagonalOrthant { generators });
        }
    }
    Err(Error::UnsupportedFace(format!(
        "no polyhedrality certificate for {face}"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n: usize,
    pub side: Side,
    pub l_k: usize,
    pub l_poly: usize,
    pub caratheodory_upper: usize,
    pub singularity_upper: usize,
}

/// Longest chain length, distance to polyhedrality, and the two bounds
/// derived from them for a cone sandwiched on `side`.
pub fn compute_bounds(n: usize, side: Side) -> Result<Bounds> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let t = triangular(n);
    let l_poly = if n == 1 { 0 } else { t - 2 };
    Ok(Bounds {
        n,
        side,
        l_k: t + 1,
        l_poly,
        caratheodory_upper: t,
        singularity_upper: l_poly + 1,
    })
}

/// Aligned text table of `compute_bounds` for each order and both sides.
pub fn bounds_table(orders: &[usize]) -> Result<String> {
    let header = [
        "n",
        "side",
        "l_K",
        "l_poly",
        "caratheodory_upper",
        "singularity_upper",
    ];
    let mut rows = vec![header.map(String::from).to_vec()];
    for &n in orders {
        for side in [Side::Cp, Side::Cop] {
            let b = compute_bounds(n, side)?;
            rows.push(vec![
                b.n.to_string(),
                side.label().to_string(),
                b.l_k.to_string(),
                b.l_poly.to_string(),
                b.caratheodory_upper.to_string(),
                b.singularity_upper.to_string(),
            ]);
        }
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).expect("write to string");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{build_chain_cop, build_chain_cp, build_chain_cp_with, ChainOrdering};
    use crate::cones::ConeId;

    fn face(kind: ConeKind, n: usize, pattern: IndexSet) -> Face {
        Face::new(ConeId::new(kind, n).unwrap(), pattern).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let d = face_dimension(&face(ConeKind::Dnn, 3, build_i(3, 1, 3).unwrap())).unwrap();
        assert_eq!(
            d,
            DimensionResult {
                lower: 5,
                upper: 5,
                exact: true
            }
        );
        let d = face_dimension(&face(ConeKind::DualSDDPlus, 3, build_j(3, 3, 3).unwrap())).unwrap();
        assert_eq!(d.value(), Some(0));
        let d = face_dimension(&face(ConeKind::Dnn, 3, build_i(3, 0, 0).unwrap())).unwrap();
        assert_eq!(d.value(), Some(6));
    }

    #[test]
    fn classification_examples() {
        let c = classify_polyhedral(&face(ConeKind::Cp, 3, build_i(3, 1, 1).unwrap())).unwrap();
        assert_eq!(c.verdict, Polyhedrality::NonPolyhedral);
        let c = classify_polyhedral(&face(ConeKind::Cp, 3, build_i(3, 2, 2).unwrap())).unwrap();
        assert_eq!(c.verdict, Polyhedrality::Polyhedral);
        assert!(matches!(
            c.certificate,
            PolyhedralityCertificate::LowDimension { dimension: 1 }
        ));
        let c = classify_polyhedral(&face(ConeKind::Cop, 3, build_j(3, 1, 3).unwrap())).unwrap();
        assert_eq!(c.verdict, Polyhedrality::NonPolyhedral);
        let c = classify_polyhedral(&face(ConeKind::Nonneg, 3, build_j(3, 1, 3).unwrap())).unwrap();
        assert!(c.is_polyhedral());
    }

    #[test]
    fn refuses_off_chain_faces() {
        let off = IndexSet::from_pairs(3, [(2, 3)]).unwrap();
        assert!(classify_polyhedral(&face(ConeKind::Dnn, 3, off)).is_err());
        assert!(classify_polyhedral(&face(ConeKind::Psd, 3, IndexSet::empty(3))).is_err());
    }

    #[test]
    fn ladder_and_leading_non_polyhedral_faces() {
        for n in 1..=4 {
            let t = triangular(n);
            for chain in [
                build_chain_cp(&ConeId::new(ConeKind::Dnn, n).unwrap()).unwrap(),
                build_chain_cop(&ConeId::new(ConeKind::DualSDDPlus, n).unwrap()).unwrap(),
            ] {
                let classes: Vec<_> = chain
                    .faces()
                    .map(|f| classify_polyhedral_with(&f, 4).unwrap())
                    .collect();
                let dims: Vec<_> = classes
                    .iter()
                    .map(|c| c.dimension.value().unwrap())
                    .collect();
                assert_eq!(dims, (0..=t).collect::<Vec<_>>());
                let leading = classes
                    .iter()
                    .rev()
                    .take_while(|c| !c.is_polyhedral())
                    .count();
                assert_eq!(leading, compute_bounds(n, chain.side).unwrap().l_poly);
                assert!(classes
                    .iter()
                    .rev()
                    .skip(leading)
                    .all(Classification::is_polyhedral));
            }
        }
    }

    #[test]
    fn legacy_chain_has_polyhedral_face_of_dimension_n() {
        for n in 3..=4 {
            let chain = build_chain_cp_with(
                &ConeId::new(ConeKind::Dnn, n).unwrap(),
                ChainOrdering::Legacy,
            )
            .unwrap();
            let hit = chain
                .faces()
                .map(|f| classify_polyhedral_with(&f, 4).unwrap())
                .any(|c| c.is_polyhedral() && c.dimension.value() == Some(n));
            assert!(hit);
        }
    }

    #[test]
    fn bound_examples() {
        let b = compute_bounds(1, Side::Cp).unwrap();
        assert_eq!((b.l_k, b.l_poly), (2, 0));
        let b = compute_bounds(3, Side::Cop).unwrap();
        assert_eq!((b.l_k, b.l_poly, b.singularity_upper), (7, 4, 5));
        assert_eq!(compute_bounds(4, Side::Cp).unwrap().caratheodory_upper, 10);
        assert!(compute_bounds(0, Side::Cp).is_err());
        let table = bounds_table(&[1, 3]).unwrap();
        assert_eq!(table.lines().count(), 5);
        assert!(table.lines().nth(3).unwrap().contains("7       4"));
    }
}
