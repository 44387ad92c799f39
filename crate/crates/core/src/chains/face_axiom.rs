//! Property test of the face axiom through its contrapositive: if
//! `A ∈ K \ F` and `B ∈ K` then `A + B ∉ F`.
//!
//! `A` is drawn from a face `K[P']` with `P'` a proper sub-pattern of the
//! face's pattern, so it sits just outside `F`. Each `A` is paired with a
//! fresh random member of `K` and with its mirror (pattern entries negated)
//! when the mirror is itself in `K`. The mirror is the partner most likely
//! to cancel the pattern entries, which is exactly how non-faces break.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::Face;
use crate::cones::{ConeKind, Sampler};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::patterns::{IndexSet, Pair};

/// How many violating pairs are kept verbatim in a report.
const KEPT_VIOLATIONS: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct FaceViolation {
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub sum: SymMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceAxiomReport {
    pub cone: ConeKind,
    pub n: usize,
    pub pattern: IndexSet,
    pub seed: u64,
    pub samples_requested: usize,
    pub pairs_tested: usize,
    pub skipped: Option<String>,
    pub violation_count: usize,
    pub violations: Vec<FaceViolation>,
}

impl FaceAxiomReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

fn proper_subpattern<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> IndexSet {
    let pairs: Vec<Pair> = pattern.iter().collect();
    let dropped = *pairs.choose(rng).expect("nonempty pattern");
    let mut sub = IndexSet::empty(pattern.order());
    for p in pairs {
        if p != dropped && rng.gen_bool(0.5) {
            sub.insert(p).expect("same order");
        }
    }
    sub
}

fn mirror(a: &SymMatrix, pattern: &IndexSet) -> SymMatrix {
    let mut m = a.clone();
    for p in pattern.iter() {
        m.set(p.i - 1, p.j - 1, -a.at(p).clone());
    }
    m
}

/// Runs up to `samples` pairs `(A, B)` against `face`.
pub fn face_axiom_test(face: &Face, samples: usize, seed: u64) -> Result<FaceAxiomReport> {
    let cone = face.cone;
    let pattern = &face.pattern;
    let mut report = FaceAxiomReport {
        cone: cone.kind(),
        n: cone.order(),
        pattern: pattern.clone(),
        seed,
        samples_requested: samples,
        pairs_tested: 0,
        skipped: None,
        violation_count: 0,
        violations: Vec::new(),
    };
    if pattern.is_empty() {
        report.skipped = Some("face equals the cone, so K \\ F is empty".into());
        return Ok(report);
    }

    let mut sampler = Sampler::new(seed);
    let n = cone.order();
    let max_attempts = samples.saturating_mul(20).max(100);
    let mut attempts = 0;
    while report.pairs_tested < samples && attempts < max_attempts {
        attempts += 1;
        let sub = proper_subpattern(pattern, sampler.rng());
        let a = sampler.member(&cone, &sub);
        if pattern.annihilates(&a) {
            continue;
        }
        if !cone.contains(&a)? {
            return Err(Error::InvalidCertificate(format!(
                "sampler produced a non-member of {cone}: {a}"
            )));
        }

        let other = if sampler.rng().gen_bool(0.5) {
            IndexSet::empty(n)
        } else {
            proper_subpattern(pattern, sampler.rng())
        };
        let mut partners = vec![sampler.member(&cone, &other)];
        let m = mirror(&a, pattern);
        if cone.contains(&m)? {
            partners.push(m);
        }

        for b in partners {
            if report.pairs_tested == samples {
                break;
            }
            report.pairs_tested += 1;
            let sum = a.try_add(&b)?;
            if pattern.annihilates(&sum) && cone.contains(&sum)? {
                report.violation_count += 1;
                if report.violations.len() < KEPT_VIOLATIONS {
                    report.violations.push(FaceViolation {
                        a: a.clone(),
                        b,
                        sum,
                    });
                }
            }
        }
    }
    if report.pairs_tested == 0 {
        report.skipped = Some(format!("no member of K \\ F found in {attempts} attempts"));
    }
    Ok(report)
}
