//! Exact Fourier–Motzkin elimination for systems `a_t · x ≥ b_t`, tracking
//! the nonnegative multipliers that produce each derived row.

use std::collections::HashSet;

use num::{Signed, Zero};

use crate::scalar::{self, Scalar};

#[derive(Clone, Debug)]
struct Row {
    a: Vec<Scalar>,
    b: Scalar,
    mult: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every row.
    Feasible(Vec<Scalar>),
    /// Farkas multipliers `μ ≥ 0` with `Σ μ_t a_t = 0` and `Σ μ_t b_t > 0`.
    Infeasible(Vec<Scalar>),
}

fn normalized_key(row: &Row) -> Vec<Scalar> {
    let scale = row
        .a
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.abs())
        .unwrap_or_else(scalar::one);
    row.a
        .iter()
        .chain(std::iter::once(&row.b))
        .map(|x| x / &scale)
        .collect()
}

fn dedupe(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = HashSet::new();
    rows.into_iter()
        .filter(|r| {
            // 0 ≥ b with b ≤ 0 carries no information.
            if r.a.iter().all(Zero::is_zero) && !r.b.is_positive() {
                return false;
            }
            seen.insert(normalized_key(r))
        })
        .collect()
}

/// Decides feasibility of `{x : a_t · x ≥ b_t}` exactly.
pub fn fourier_motzkin(system: &[(Vec<Scalar>, Scalar)], dim: usize) -> Feasibility {
    let m = system.len();
    let mut current: Vec<Row> = system
        .iter()
        .enumerate()
        .map(|(t, (a, b))| {
            assert_eq!(a.len(), dim, "row length must match the dimension");
            let mut mult = vec![Scalar::zero(); m];
            mult[t] = scalar::one();
            Row {
                a: a.clone(),
                b: b.clone(),
                mult,
            }
        })
        .collect();
    let mut stages = Vec::with_capacity(dim);

    for v in 0..dim {
        current = dedupe(current);
        stages.push(current.clone());
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in current {
            if r.a[v].is_positive() {
                pos.push(r);
            } else if r.a[v].is_negative() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let (cp, cq) = (-q.a[v].clone(), p.a[v].clone());
                let combine = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
                    x.iter().zip(y).map(|(s, t)| s * &cp + t * &cq).collect()
                };
                next.push(Row {
                    a: combine(&p.a, &q.a),
                    b: &p.b * &cp + &q.b * &cq,
                    mult: combine(&p.mult, &q.mult),
                });
            }
        }
        current = next;
    }

    if let Some(bad) = current.iter().find(|r| r.b.is_positive()) {
        return Feasibility::Infeasible(bad.mult.clone());
    }

    let mut x = vec![Scalar::zero(); dim];
    for v in (0..dim).rev() {
        let mut lower: Option<Scalar> = None;
        let mut upper: Option<Scalar> = None;
        for r in &stages[v] {
            if r.a[v].is_zero() {
                continue;
            }
            let rest: Scalar = (v + 1..dim).map(|w| &r.a[w] * &x[w]).sum();
            let bound = (&r.b - rest) / &r.a[v];
            if r.a[v].is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        x[v] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u,
            (None, None) => Scalar::zero(),
        };
    }
    Feasibility::Feasible(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sys(rows: &[(&[i64], i64)]) -> Vec<(Vec<Scalar>, Scalar)> {
        rows.iter()
            .map(|(a, b)| (a.iter().map(|&v| int(v)).collect(), int(*b)))
            .collect()
    }

    fn satisfies(system: &[(Vec<Scalar>, Scalar)], x: &[Scalar]) -> bool {
        system
            .iter()
            .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<Scalar>() >= *b)
    }

    #[test]
    fn feasible_box() {
        let s = sys(&[(&[1, 0], 1), (&[-1, 0], -3), (&[0, 1], 2), (&[1, 1], 4)]);
        match fourier_motzkin(&s, 2) {
            Feasibility::Feasible(x) => assert!(satisfies(&s, &x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_farkas() {
        // x ≥ 2 and -x ≥ -1.
        let s = sys(&[(&[1], 2), (&[-1], -1)]);
        let Feasibility::Infeasible(mu) = fourier_motzkin(&s, 1) else {
            panic!()
        };
        let combo: Scalar = s.iter().zip(&mu).map(|((a, _), m)| &a[0] * m).sum();
        let rhs: Scalar = s.iter().zip(&mu).map(|((_, b), m)| b * m).sum();
        assert!(combo.is_zero() && rhs.is_positive());
        assert!(mu.iter().all(|m| !m.is_negative()));
    }

    #[test]
    fn three_variables() {
        // x + y + z ≥ 1, x, y, z ≤ 0 is infeasible.
        let s = sys(&[
            (&[1, 1, 1], 1),
            (&[-1, 0, 0], 0),
            (&[0, -1, 0], 0),
            (&[0, 0, -1], 0),
        ]);
        assert!(matches!(fourier_motzkin(&s, 3), Feasibility::Infeasible(_)));
        let s = sys(&[(&[1, 1, 1], 1), (&[-1, 0, 0], 0), (&[0, -1, 0], 0)]);
        let Feasibility::Feasible(x) = fourier_motzkin(&s, 3) else {
            panic!()
        };
        assert!(satisfies(&s, &x));
    }
}
