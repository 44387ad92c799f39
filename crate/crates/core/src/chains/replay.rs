//! Exact replays of the two non-face constructions and the collapse of the
//! `J_ii ⊆ … ⊆ J_in` inclusions on cones inside the PSD cone.

use num::Zero;
use rand::Rng;
use serde::Serialize;

use crate::cones::{ConeId, ConeKind, Sampler};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::patterns::{build_i, build_j, pattern_matrix_e, unit_matrix, IndexSet, Pair};
use crate::psd::psd_check;
use crate::scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub statement: String,
    pub holds: bool,
}

/// One replayed construction: `A, B ∈ K`, `A + B ∈ K[pattern]`, yet
/// `A ∉ K[pattern]`, so `K[pattern]` is not a face.
#[derive(Clone, Debug, Serialize)]
pub struct ReplayVerdict {
    pub name: &'static str,
    pub cone: ConeKind,
    pub n: usize,
    pub pattern: IndexSet,
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub sum: SymMatrix,
    pub facts: Vec<Fact>,
    pub confirmed: bool,
}

fn fact(facts: &mut Vec<Fact>, statement: impl Into<String>, holds: bool) {
    facts.push(Fact {
        statement: statement.into(),
        holds,
    });
}

fn block(n: usize, rows: &[&[i64]]) -> Result<SymMatrix> {
    SymMatrix::from_i64(rows)?.padded(n)
}

fn require_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the construction needs n >= 2, got n = {n}"
        )));
    }
    Ok(())
}

fn finish(
    name: &'static str,
    cone: &ConeId,
    pattern: IndexSet,
    a: SymMatrix,
    b: SymMatrix,
    mut facts: Vec<Fact>,
) -> Result<ReplayVerdict> {
    let sum = a.try_add(&b)?;
    fact(
        &mut facts,
        format!("A ∈ {}", cone.kind()),
        cone.member(&a)?.is_member(),
    );
    fact(
        &mut facts,
        format!("B ∈ {}", cone.kind()),
        cone.member(&b)?.is_member(),
    );
    fact(
        &mut facts,
        format!("A + B ∈ {}[{pattern}]", cone.kind()),
        pattern.annihilates(&sum) && cone.member(&sum)?.is_member(),
    );
    fact(
        &mut facts,
        format!("A ∉ {}[{pattern}]", cone.kind()),
        !pattern.annihilates(&a),
    );
    fact(
        &mut facts,
        format!("B ∉ {}[{pattern}]", cone.kind()),
        !pattern.annihilates(&b),
    );
    let confirmed = facts.iter().all(|f| f.holds);
    Ok(ReplayVerdict {
        name,
        cone: cone.kind(),
        n: cone.order(),
        pattern,
        a,
        b,
        sum,
        facts,
        confirmed,
    })
}

/// `(DD_+^n)^*[J_12]` is not a face of `(DD_+^n)^*`.
pub fn replay_remark_dual_ddplus(n: usize) -> Result<ReplayVerdict> {
    require_order(n)?;
    let cone = ConeId::new(ConeKind::DualDDPlus, n)?;
    let a = block(n, &[&[0, 1], &[1, 2]])?;
    let b = block(n, &[&[0, -1], &[-1, 2]])?;
    let mut facts = Vec::new();
    fact(
        &mut facts,
        "A_11 + B_11 = 0",
        (a.get(0, 0) + b.get(0, 0)).is_zero(),
    );
    fact(
        &mut facts,
        "A_12 + B_12 = 0",
        (a.get(0, 1) + b.get(0, 1)).is_zero(),
    );
    fact(
        &mut facts,
        "A + B = [[0,0],[0,4]] ⊕ O",
        a.try_add(&b)? == block(n, &[&[0, 0], &[0, 4]])?,
    );
    fact(
        &mut facts,
        "A_12 ≠ 0 and B_12 ≠ 0",
        !a.get(0, 1).is_zero() && !b.get(0, 1).is_zero(),
    );
    finish("dual-ddp-face", &cone, build_j(n, 1, 2)?, a, b, facts)
}

/// `K[I_1n]` is not a face of a cone `K ⊇ S_+^n` on the COP side, which is
/// why the COP chain zeroes the diagonal first.
pub fn replay_remark_cop_order(n: usize, cone: &ConeId) -> Result<ReplayVerdict> {
    require_order(n)?;
    if cone.order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: cone.order(),
        });
    }
    if !matches!(
        cone.kind(),
        ConeKind::Spn | ConeKind::Cop | ConeKind::DualSDDPlus | ConeKind::Psd
    ) {
        return Err(Error::OutsideSandwich {
            cone: cone.kind(),
            side: "cop_side (a cone containing S_+^n)",
        });
    }
    let corner = |sign: i64| {
        let mut m = SymMatrix::zeros(n);
        m.set(0, 0, scalar::one());
        m.set(n - 1, n - 1, scalar::one());
        m.set(0, n - 1, scalar::int(sign));
        m
    };
    let (a, b) = (corner(-1), corner(1));
    let mut facts = Vec::new();
    fact(&mut facts, "A ∈ S_+^n", psd_check(&a).is_psd());
    fact(&mut facts, "B ∈ S_+^n", psd_check(&b).is_psd());
    fact(
        &mut facts,
        format!("A_1{n} + B_1{n} = 0"),
        (a.get(0, n - 1) + b.get(0, n - 1)).is_zero(),
    );
    fact(
        &mut facts,
        format!("A_1{n} ≠ 0 and B_1{n} ≠ 0"),
        !a.get(0, n - 1).is_zero() && !b.get(0, n - 1).is_zero(),
    );
    finish("cop-ordering", cone, build_i(n, 1, n)?, a, b, facts)
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub cone: ConeKind,
    pub n: usize,
    pub seed: u64,
    pub members_checked: usize,
    pub zero_diagonal_rows: usize,
    pub perturbations_tried: usize,
    pub perturbations_rejected: usize,
    pub witnesses_tried: usize,
    pub witnesses_rejected: usize,
    pub violations: Vec<String>,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.perturbations_rejected == self.perturbations_tried
            && self.witnesses_rejected == self.witnesses_tried
    }
}

/// Checks that on `cone ⊆ S_+^n` a zero diagonal entry forces a zero row,
/// so `K[J_ii] = K[J_{i,i+1}] = … = K[J_in]`.
pub fn equality_collapse_check(
    n: usize,
    cone: &ConeId,
    samples: usize,
    seed: u64,
) -> Result<CollapseReport> {
    if !matches!(cone.kind(), ConeKind::Cp | ConeKind::Dnn) {
        return Err(Error::OutsideSandwich {
            cone: cone.kind(),
            side: "between CP and DNN",
        });
    }
    if cone.order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: cone.order(),
        });
    }
    let mut report = CollapseReport {
        cone: cone.kind(),
        n,
        seed,
        members_checked: 0,
        zero_diagonal_rows: 0,
        perturbations_tried: 0,
        perturbations_rejected: 0,
        witnesses_tried: 0,
        witnesses_rejected: 0,
        violations: Vec::new(),
    };

    // E[J_{i,j-1}] has a zero at (i,i) and a one at (i,j), so it must be
    // rejected by any cone inside S_+^n.
    for i in 1..=n {
        for j in i + 1..=n {
            report.witnesses_tried += 1;
            let w = pattern_matrix_e(&build_j(n, i, j - 1)?);
            if !cone.contains(&w)? {
                report.witnesses_rejected += 1;
            } else {
                report
                    .violations
                    .push(format!("E[J_{i}{}] accepted by {}", j - 1, cone.kind()));
            }
        }
    }

    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let i = sampler.rng().gen_range(1..=n);
        let mut pattern = IndexSet::empty(n).with(Pair::new(i, i))?;
        for k in 1..=n {
            if sampler.rng().gen_bool(0.25) {
                pattern.insert(Pair::new(k, k))?;
            }
        }
        let a = sampler.member(cone, &pattern);
        if !cone.contains(&a)? {
            return Err(Error::InvalidCertificate(format!(
                "sampler produced a non-member of {cone}: {a}"
            )));
        }
        report.members_checked += 1;
        for k in 0..n {
            if a.get(k, k).is_zero() {
                report.zero_diagonal_rows += 1;
                if let Some(l) = (0..n).find(|&l| !a.get(k, l).is_zero()) {
                    report.violations.push(format!(
                        "row {} of {a} is nonzero at column {}",
                        k + 1,
                        l + 1
                    ));
                }
            }
        }
        if n >= 2 {
            let mut j = sampler.rng().gen_range(1..n);
            if j >= i {
                j += 1;
            }
            let t = scalar::ratio(
                sampler.rng().gen_range(1..=4),
                sampler.rng().gen_range(1..=4),
            );
            let t = if sampler.rng().gen_bool(0.5) { -t } else { t };
            let mut perturbed = a.clone();
            perturbed.add_scaled(&t, &unit_matrix(n, Pair::new(i, j)))?;
            report.perturbations_tried += 1;
            if !cone.contains(&perturbed)? {
                report.perturbations_rejected += 1;
            } else {
                report
                    .violations
                    .push(format!("{perturbed} accepted with a zero diagonal at {i}"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_dd_replay_confirms() {
        for n in 2..=6 {
            let v = replay_remark_dual_ddplus(n).unwrap();
            assert!(v.confirmed, "{:?}", v.facts);
            assert_eq!(v.sum, block(n, &[&[0, 0], &[0, 4]]).unwrap());
        }
        assert!(replay_remark_dual_ddplus(1).is_err());
    }

    #[test]
    fn cop_order_replay_confirms() {
        for n in 2..=4 {
            for kind in [ConeKind::Spn, ConeKind::Cop, ConeKind::DualSDDPlus] {
                let v = replay_remark_cop_order(n, &ConeId::new(kind, n).unwrap()).unwrap();
                assert!(v.confirmed, "{kind:?} n={n}: {:?}", v.facts);
            }
        }
        for n in 5..=6 {
            let v = replay_remark_cop_order(n, &ConeId::new(ConeKind::DualSDDPlus, n).unwrap())
                .unwrap();
            assert!(v.confirmed);
        }
        assert!(replay_remark_cop_order(3, &ConeId::new(ConeKind::Nonneg, 3).unwrap()).is_err());
        assert!(replay_remark_cop_order(1, &ConeId::new(ConeKind::Cop, 1).unwrap()).is_err());
    }

    #[test]
    fn corner_a_is_a_rank_one_gram() {
        let v = replay_remark_cop_order(3, &ConeId::new(ConeKind::Cop, 3).unwrap()).unwrap();
        assert!(psd_check(&v.a).is_psd());
        assert_eq!(
            v.a,
            SymMatrix::from_i64(&[&[1, 0, -1], &[0, 0, 0], &[-1, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn collapse_on_dnn() {
        let r =
            equality_collapse_check(3, &ConeId::new(ConeKind::Dnn, 3).unwrap(), 1000, 5).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.members_checked, 1000);
        assert_eq!(r.witnesses_tried, 3);
        assert!(r.zero_diagonal_rows >= 1000);
    }

    #[test]
    fn collapse_refuses_cones_outside_psd() {
        assert!(
            equality_collapse_check(3, &ConeId::new(ConeKind::Nonneg, 3).unwrap(), 1, 0).is_err()
        );
    }
}
