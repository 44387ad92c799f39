//! Structured chain reports.
//!
//! A report is a JSON tree:
//!
//! ```text
//! { side, n, cone, ordering, length, l_k_expected, l_poly, l_poly_expected,
//!   l_poly_realized_by, flags[], seed,
//!   faces[]           listed from the full cone F_1 down to {0} = F_l
//!     { index, label, pattern, cardinality, dimension{lower,upper,exact},
//!       polyhedral, certificate, witness_ok, witness_failure, face_axiom },
//!   counterexamples[] { name, cone, n, pattern, a, b, sum, facts[], confirmed } }
//! ```
//!
//! Matrices are rows of exact rationals written as strings.

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{
    face_axiom_test, replay_remark_cop_order, replay_remark_dual_ddplus, Chain, ChainOrdering,
    FaceAxiomReport, ReplayVerdict, Side,
};
use crate::cones::{ConeId, ConeKind};
use crate::error::Result;
use crate::geometry::{
    classify_polyhedral_with, compute_bounds, DimensionResult, PolyhedralityCertificate,
};
use crate::matrix::triangular;
use crate::patterns::IndexSet;

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Re-check every witness.
    pub verify: bool,
    /// Pairs per face for the face-axiom test; `None` skips it.
    pub face_axiom_samples: Option<usize>,
    pub seed: u64,
    pub ray_count: usize,
    pub counterexamples: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            verify: true,
            face_axiom_samples: None,
            seed: 0,
            ray_count: crate::geometry::DEFAULT_RAY_COUNT,
            counterexamples: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceAxiomSummary {
    pub pairs_tested: usize,
    pub violations: usize,
    pub skipped: Option<String>,
}

impl From<&FaceAxiomReport> for FaceAxiomSummary {
    fn from(r: &FaceAxiomReport) -> Self {
        Self {
            pairs_tested: r.pairs_tested,
            violations: r.violation_count,
            skipped: r.skipped.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    /// Position `k` in `F_l ⊊ … ⊊ F_1`, with `F_1` the whole cone.
    pub index: usize,
    pub label: Option<String>,
    pub pattern: IndexSet,
    pub cardinality: usize,
    pub dimension: DimensionResult,
    pub polyhedral: bool,
    pub certificate: PolyhedralityCertificate,
    /// Whether the witness separating this face from the one above checks
    /// out; `None` for `F_1` or when verification was not requested.
    pub witness_ok: Option<bool>,
    pub witness_failure: Option<String>,
    pub face_axiom: Option<FaceAxiomSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub side: Side,
    pub n: usize,
    pub cone: ConeKind,
    pub ordering: ChainOrdering,
    pub length: usize,
    pub l_k_expected: usize,
    pub l_poly: usize,
    /// `T_n - 2` (or 0 for `n = 1`) when the cone sits in the polyhedrality
    /// sandwich of its side and the chain uses the default ordering.
    pub l_poly_expected: Option<usize>,
    pub l_poly_realized_by: String,
    pub flags: Vec<String>,
    pub seed: u64,
    pub faces: Vec<FaceReport>,
    pub counterexamples: Vec<ReplayVerdict>,
}

impl ChainReport {
    /// True when the observed values match the expected ones and every
    /// requested check passed.
    pub fn consistent(&self) -> bool {
        self.length == self.l_k_expected
            && self.l_poly_expected.is_none_or(|e| e == self.l_poly)
            && self.faces.iter().all(|f| f.witness_ok != Some(false))
            && self
                .faces
                .iter()
                .all(|f| f.face_axiom.as_ref().is_none_or(|a| a.violations == 0))
            && self.counterexamples.iter().all(|c| c.confirmed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Per-face table for terminal output.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "side {}  n {}  cone {}  ordering {:?}\nlength {}  l_poly {}\n",
            self.side,
            self.n,
            self.cone.cli_name(),
            self.ordering,
            self.length,
            self.l_poly
        )
        .to_lowercase();
        for flag in &self.flags {
            out.push_str(&format!("flag: {flag}\n"));
        }
        let rows: Vec<[String; 6]> = std::iter::once(
            ["face", "label", "card", "dim", "polyhedral", "witness"].map(String::from),
        )
        .chain(self.faces.iter().map(|f| {
            [
                format!("F_{}", f.index),
                f.label.clone().unwrap_or_else(|| "-".into()),
                f.cardinality.to_string(),
                f.dimension.value().map_or_else(
                    || format!("{}..{}", f.dimension.lower, f.dimension.upper),
                    |d| d.to_string(),
                ),
                if f.polyhedral { "yes" } else { "no" }.to_string(),
                match f.witness_ok {
                    Some(true) => "ok".into(),
                    Some(false) => "FAIL".into(),
                    None => "-".into(),
                },
            ]
        }))
        .collect();
        let widths: Vec<usize> = (0..6)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        for r in rows {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn in_polyhedrality_sandwich(side: Side, kind: ConeKind) -> bool {
    match side {
        Side::Cp => matches!(kind, ConeKind::SDDPlus | ConeKind::Cp | ConeKind::Dnn),
        Side::Cop => matches!(kind, ConeKind::Spn | ConeKind::Cop | ConeKind::DualSDDPlus),
    }
}

fn label(side: Side, ij: Option<(usize, usize)>) -> Option<String> {
    let (i, j) = ij?;
    let letter = if side == Side::Cp { 'I' } else { 'J' };
    Some(format!("{letter}({i},{j})"))
}

pub fn build_report(chain: &Chain, opts: &ReportOptions) -> Result<ChainReport> {
    let n = chain.order();
    let len = chain.len();
    let kind = chain.cone.kind();

    // Faces from the full cone down: F_k is chain index len - k.
    let faces: Vec<FaceReport> = (1..=len)
        .into_par_iter()
        .map(|k| {
            let s = len - k;
            let face = chain.face(s);
            let class = classify_polyhedral_with(&face, opts.ray_count)?;
            let (witness_ok, witness_failure) = if opts.verify && s + 1 < len {
                let v = chain.verify_step(s);
                (
                    Some(v.passed()),
                    v.failed.map(|(clause, msg)| format!("{clause:?}: {msg}")),
                )
            } else {
                (None, None)
            };
            let face_axiom = match opts.face_axiom_samples {
                Some(samples) => Some(FaceAxiomSummary::from(&face_axiom_test(
                    &face,
                    samples,
                    opts.seed.wrapping_add(k as u64),
                )?)),
                None => None,
            };
            Ok(FaceReport {
                index: k,
                label: label(chain.side, chain.labels[s]),
                cardinality: face.pattern.len(),
                pattern: face.pattern,
                dimension: class.dimension,
                polyhedral: class.is_polyhedral(),
                certificate: class.certificate,
                witness_ok,
                witness_failure,
                face_axiom,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let l_poly = faces.iter().take_while(|f| !f.polyhedral).count();
    let bounds = compute_bounds(n, chain.side)?;
    let sandwiched = in_polyhedrality_sandwich(chain.side, kind);
    let paper_order = chain.ordering == ChainOrdering::Paper;
    let l_poly_expected = (sandwiched && paper_order).then_some(bounds.l_poly);

    let mut flags = Vec::new();
    if len != triangular(n) + 1 {
        flags.push(format!(
            "length {len} differs from T_n + 1 = {}",
            triangular(n) + 1
        ));
    }
    if !sandwiched {
        flags.push(format!(
            "{} is polyhedral, so every face is polyhedral and l_poly = 0; the T_n - 2 formula does not apply",
            kind
        ));
    }
    if !paper_order {
        if let Some(f) = faces
            .iter()
            .find(|f| f.polyhedral && f.dimension.value() == Some(n) && n >= 3)
        {
            flags.push(format!(
                "legacy ordering reaches the polyhedral face F_{} of dimension {n}; it cannot certify l_poly = T_n - 2",
                f.index
            ));
        }
    }
    if let Some(e) = l_poly_expected {
        if e != l_poly {
            flags.push(format!(
                "observed l_poly {l_poly} differs from the expected {e}"
            ));
        }
    }

    let realized = faces.get(l_poly).map_or_else(String::new, |f| {
        format!(
            "this {} chain ({} ordering): F_1 down to F_{}, the first polyhedral face {}",
            chain.side,
            format!("{:?}", chain.ordering).to_lowercase(),
            f.index,
            f.label.clone().unwrap_or_else(|| f.pattern.to_string())
        )
    });

    let mut counterexamples = Vec::new();
    if opts.counterexamples && chain.side == Side::Cop && n >= 2 {
        counterexamples.push(replay_remark_dual_ddplus(n)?);
        let host = if matches!(kind, ConeKind::Spn | ConeKind::Cop | ConeKind::DualSDDPlus) {
            chain.cone
        } else {
            ConeId::new(ConeKind::DualSDDPlus, n)?
        };
        counterexamples.push(replay_remark_cop_order(n, &host)?);
    }

    Ok(ChainReport {
        side: chain.side,
        n,
        cone: kind,
        ordering: chain.ordering,
        length: len,
        l_k_expected: bounds.l_k,
        l_poly,
        l_poly_expected,
        l_poly_realized_by: realized,
        flags,
        seed: opts.seed,
        faces,
        counterexamples,
    })
}
