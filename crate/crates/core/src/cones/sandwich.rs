use serde::Serialize;

use super::{ConeId, MembershipCertificate, Sampler};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::patterns::IndexSet;

/// A membership oracle for a closed convex cone in `S^n`. Implemented by
/// every built-in [`ConeId`]; user cones plug in through this trait.
pub trait ConeOracle: Sync {
    fn name(&self) -> String;
    fn order(&self) -> usize;
    fn contains(&self, a: &SymMatrix) -> Result<bool>;
}

impl ConeOracle for ConeId {
    fn name(&self) -> String {
        self.to_string()
    }

    fn order(&self) -> usize {
        ConeId::order(self)
    }

    fn contains(&self, a: &SymMatrix) -> Result<bool> {
        ConeId::contains(self, a)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichViolation {
    pub matrix: SymMatrix,
    pub inner: Option<MembershipCertificate>,
    pub outer: Option<MembershipCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub inner: String,
    pub outer: String,
    pub samples: usize,
    pub seed: u64,
    pub violations: Vec<SandwichViolation>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples members of `inner` from its generator family and checks that
/// `outer` accepts each one.
pub fn sandwich_check(
    inner: &ConeId,
    outer: &ConeId,
    samples: usize,
    seed: u64,
) -> Result<SandwichReport> {
    if inner.order() != outer.order() {
        return Err(Error::DimensionMismatch {
            expected: inner.order(),
            actual: outer.order(),
        });
    }
    let mut sampler = Sampler::new(seed);
    let everything = IndexSet::empty(inner.order());
    let mut violations = Vec::new();
    for _ in 0..samples {
        let a = sampler.member(inner, &everything);
        let outer_cert = outer.member(&a)?;
        if !outer_cert.is_member() {
            violations.push(SandwichViolation {
                inner: Some(inner.member(&a)?),
                outer: Some(outer_cert),
                matrix: a,
            });
        }
    }
    Ok(SandwichReport {
        inner: inner.to_string(),
        outer: outer.to_string(),
        samples,
        seed,
        violations,
    })
}

/// Sampling check of `lower ⊆ oracle ⊆ upper` for a black-box oracle:
/// members of `lower` must be accepted, and random matrices rejected by
/// `upper` must be rejected by the oracle.
pub fn check_sandwich_sampled(
    oracle: &dyn ConeOracle,
    lower: &ConeId,
    upper: &ConeId,
    samples: usize,
    seed: u64,
) -> Result<SandwichReport> {
    let n = oracle.order();
    if lower.order() != n || upper.order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: lower.order().max(upper.order()),
        });
    }
    let mut sampler = Sampler::new(seed);
    let everything = IndexSet::empty(n);
    let mut violations = Vec::new();
    for _ in 0..samples {
        let a = sampler.member(lower, &everything);
        if !oracle.contains(&a)? {
            violations.push(SandwichViolation {
                inner: Some(lower.member(&a)?),
                outer: None,
                matrix: a,
            });
        }
        let b = sampler.symmetric(n, 4);
        let upper_cert = upper.member(&b)?;
        if !upper_cert.is_member() && oracle.contains(&b)? {
            violations.push(SandwichViolation {
                inner: None,
                outer: Some(upper_cert),
                matrix: b,
            });
        }
    }
    Ok(SandwichReport {
        inner: lower.to_string(),
        outer: format!("{} within {}", oracle.name(), upper),
        samples,
        seed,
        violations,
    })
}
