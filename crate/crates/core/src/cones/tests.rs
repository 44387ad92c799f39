use super::*;
use crate::patterns::generator_e;
use crate::scalar::{int, ratio};

fn m(rows: &[&[i64]]) -> SymMatrix {
    SymMatrix::from_i64(rows).unwrap()
}

fn cone(kind: ConeKind, n: usize) -> ConeId {
    ConeId::new(kind, n).unwrap()
}

#[test]
fn nonneg_examples() {
    assert!(member_nonneg(&m(&[&[1, 0], &[0, 2]])).is_member());
    let c = member_nonneg(&m(&[&[0, -1], &[-1, 0]]));
    assert_eq!(
        c.evidence,
        Evidence::NegativeEntry {
            pair: Pair::new(1, 2),
            value: int(-1)
        }
    );
    assert!(member_nonneg(&generator_e(2, 1, 2).unwrap()).is_member());
}

#[test]
fn dd_plus_weights() {
    let a = m(&[&[2, 1], &[1, 3]]);
    let c = member_dd_plus(&a);
    c.verify(&a).unwrap();
    let Evidence::GeneratorWeights { weights } = c.evidence else {
        panic!()
    };
    let got: Vec<(Pair, Scalar)> = weights.into_iter().map(|w| (w.pair, w.weight)).collect();
    assert_eq!(
        got,
        vec![
            (Pair::new(1, 1), ratio(1, 4)),
            (Pair::new(1, 2), int(1)),
            (Pair::new(2, 2), ratio(1, 2))
        ]
    );
    // Independent reconstruction: (1/4)E11 + E12 + (1/2)E22.
    let mut r = SymMatrix::zeros(2);
    r.add_scaled(&ratio(1, 4), &generator_e(2, 1, 1).unwrap())
        .unwrap();
    r.add_scaled(&int(1), &generator_e(2, 1, 2).unwrap())
        .unwrap();
    r.add_scaled(&ratio(1, 2), &generator_e(2, 2, 2).unwrap())
        .unwrap();
    assert_eq!(r, a);
}

#[test]
fn dd_plus_rejections() {
    let c = member_dd_plus(&m(&[&[1, 2], &[2, 1]]));
    assert_eq!(
        c.evidence,
        Evidence::DominanceViolated {
            row: 1,
            diagonal: int(1),
            off_diagonal_sum: int(2)
        }
    );
    let e13 = generator_e(3, 1, 3).unwrap();
    let c = member_dd_plus(&e13);
    let Evidence::GeneratorWeights { weights } = c.evidence else {
        panic!()
    };
    assert_eq!(
        weights,
        vec![Weight {
            pair: Pair::new(1, 3),
            weight: int(1)
        }]
    );
}

#[test]
fn sdd_plus_examples() {
    assert!(member_sdd_plus(&m(&[&[1, 1], &[1, 1]])).is_member());
    assert!(member_sdd_plus(&m(&[&[1, 2], &[2, 8]])).is_member());
    assert!(!member_sdd_plus(&m(&[&[1, 3], &[3, 1]])).is_member());
    // D = diag(2, 1) makes [[1,2],[2,8]] diagonally dominant: [[4,4],[4,8]].
    let scaled = m(&[&[4, 4], &[4, 8]]);
    assert!(member_dd_plus(&scaled).is_member());
}

#[test]
fn dnn_examples() {
    assert!(member_dnn(&m(&[&[1, 1], &[1, 1]])).is_member());
    let c = member_dnn(&m(&[&[1, 2], &[2, 1]]));
    assert!(matches!(c.evidence, Evidence::Psd { .. }) && !c.is_member());
    let c = member_dnn(&m(&[&[1, -1], &[-1, 1]]));
    assert!(matches!(c.evidence, Evidence::NegativeEntry { .. }));
}

#[test]
fn cop_examples() {
    assert!(member_cop(&m(&[&[1, -1], &[-1, 1]]), 8)
        .unwrap()
        .is_member());
    let c = member_cop(&m(&[&[0, -1], &[-1, 0]]), 8).unwrap();
    assert!(!c.is_member());
    let Evidence::SimplexMin { result } = c.evidence else {
        panic!()
    };
    assert_eq!(result.minimizer, vec![ratio(1, 2), ratio(1, 2)]);
    assert_eq!(result.minimum, ratio(-1, 2));
}

#[test]
fn small_order_oracles() {
    assert!(member_cp_small(&m(&[&[1, 1], &[1, 1]]))
        .unwrap()
        .is_member());
    let five = SymMatrix::identity(5);
    assert!(matches!(
        member_cp_small(&five),
        Err(Error::UnsupportedOrder { n: 5, .. })
    ));
    assert!(matches!(
        member_spn_small(&five, 8),
        Err(Error::UnsupportedOrder { n: 5, .. })
    ));
    assert!(ConeId::new(ConeKind::Cp, 5).is_err());
    assert!(ConeId::new(ConeKind::Spn, 4).is_ok());
}

#[test]
fn cp_small_accepts_nonnegative_gram() {
    // G ≥ 0, A = G Gᵀ is a CP factorization.
    let g = [[1i64, 0, 2], [3, 1, 0], [0, 2, 1], [1, 1, 1]];
    let mut rows = vec![vec![int(0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rows[i][j] = int((0..3).map(|k| g[i][k] * g[j][k]).sum());
        }
    }
    let a = SymMatrix::from_rows(rows).unwrap();
    assert!(cone(ConeKind::Cp, 4).contains(&a).unwrap());
}

#[test]
fn cop_above_limit_is_an_error() {
    let c = cone(ConeKind::Cop, 9);
    assert_eq!(
        c.member(&SymMatrix::identity(9)).unwrap_err(),
        Error::EnumerationLimit { n: 9, limit: 8 }
    );
    assert!(c
        .with_enumeration_limit(9)
        .contains(&SymMatrix::identity(9))
        .unwrap());
}

#[test]
fn zero_matrix_in_every_cone() {
    for n in 1..=4 {
        for kind in ConeKind::ALL {
            assert!(
                cone(kind, n).contains(&SymMatrix::zeros(n)).unwrap(),
                "{kind} at {n}"
            );
        }
    }
}

#[test]
fn order_one_is_the_nonnegative_ray() {
    for kind in ConeKind::ALL {
        let c = cone(kind, 1);
        assert!(c.contains(&m(&[&[3]])).unwrap(), "{kind}");
        assert!(!c.contains(&m(&[&[-1]])).unwrap(), "{kind}");
    }
}

#[test]
fn dimension_mismatch() {
    assert!(cone(ConeKind::Nonneg, 3)
        .member(&SymMatrix::zeros(2))
        .is_err());
}

#[test]
fn cli_names_round_trip() {
    for kind in ConeKind::ALL {
        assert_eq!(ConeKind::from_cli_name(kind.cli_name()), Some(kind));
    }
    assert_eq!(ConeKind::from_cli_name("bogus"), None);
}

#[test]
fn small_inclusion_sandwiches() {
    let r = sandwich_check(
        &cone(ConeKind::DDPlus, 5),
        &cone(ConeKind::Nonneg, 5),
        200,
        1,
    )
    .unwrap();
    assert!(r.passed());
    let r = sandwich_check(&cone(ConeKind::SDDPlus, 4), &cone(ConeKind::Cp, 4), 100, 2).unwrap();
    assert!(r.passed());
    let r = sandwich_check(
        &cone(ConeKind::Nonneg, 6),
        &cone(ConeKind::DualSDDPlus, 6),
        200,
        3,
    )
    .unwrap();
    assert!(r.passed());
    // A reversed inclusion must be caught.
    let r = sandwich_check(
        &cone(ConeKind::Nonneg, 3),
        &cone(ConeKind::DDPlus, 3),
        100,
        4,
    )
    .unwrap();
    assert!(!r.passed());
}

struct HalfDiagonal(usize);

impl ConeOracle for HalfDiagonal {
    fn name(&self) -> String {
        "user cone".into()
    }
    fn order(&self) -> usize {
        self.0
    }
    // Nonnegative matrices whose diagonal dominates half the row sum: sits
    // between DD+ and N.
    fn contains(&self, a: &SymMatrix) -> Result<bool> {
        if a.first_negative().is_some() {
            return Ok(false);
        }
        Ok((0..self.0).all(|i| {
            let off: Scalar = (0..self.0)
                .filter(|&j| j != i)
                .map(|j| a.get(i, j).clone())
                .sum();
            a.get(i, i) * int(2) >= off
        }))
    }
}

#[test]
fn plug_in_oracle_sandwich() {
    let r = check_sandwich_sampled(
        &HalfDiagonal(3),
        &cone(ConeKind::DDPlus, 3),
        &cone(ConeKind::Nonneg, 3),
        200,
        9,
    )
    .unwrap();
    assert!(r.passed());
    // PSD is not inside N: rejected matrices of N get accepted.
    let r = check_sandwich_sampled(
        &cone(ConeKind::Psd, 3),
        &cone(ConeKind::DDPlus, 3),
        &cone(ConeKind::Nonneg, 3),
        300,
        9,
    )
    .unwrap();
    assert!(!r.passed());
}
