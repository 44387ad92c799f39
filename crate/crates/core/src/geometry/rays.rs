//! Families of extreme rays inside an embedded 2×2 block and exact
//! certificates that no ray is a conic combination of the others.

use num::{Signed, Zero};
use serde::Serialize;

use super::lp::{fourier_motzkin, Feasibility};
use crate::chains::{Face, Side};
use crate::error::{Error, Result};
use crate::matrix::{inner_product, SymMatrix};
use crate::patterns::IndexSet;
use crate::scalar::{self, Scalar};

pub const DEFAULT_RAY_COUNT: usize = 32;

#[derive(Clone, Debug, Serialize)]
pub struct RayFamily {
    pub pattern: IndexSet,
    /// The free principal block `{(k,k), (k,l), (l,l)}` the rays live in.
    pub block: (usize, usize),
    pub rays: Vec<SymMatrix>,
}

/// First `(k, l)` with `k < l` whose principal block is free of `pattern`.
pub fn free_block(pattern: &IndexSet) -> Option<(usize, usize)> {
    let n = pattern.order();
    (1..=n)
        .flat_map(|k| (k + 1..=n).map(move |l| (k, l)))
        .find(|&(k, l)| {
            !pattern.contains(k, k) && !pattern.contains(k, l) && !pattern.contains(l, l)
        })
}

fn embedded_rank_one(n: usize, (k, l): (usize, usize), a: (Scalar, Scalar)) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    m.set(k - 1, k - 1, &a.0 * &a.0);
    m.set(k - 1, l - 1, &a.0 * &a.1);
    m.set(l - 1, l - 1, &a.1 * &a.1);
    m
}

/// `k` rays `a aᵀ` in the first free 2×2 block of the face, with
/// `a = (1, m)` on the CP side and `a = (1, -m)` on the COP side.
/// Every ray is checked to lie in the face.
pub fn extreme_ray_family(face: &Face, side: Side, k: usize) -> Result<RayFamily> {
    let block = free_block(&face.pattern)
        .ok_or_else(|| Error::UnsupportedFace(format!("{face} has no free principal 2×2 block")))?;
    let n = face.order();
    let mut rays = Vec::with_capacity(k);
    for m in 1..=k as i64 {
        let t = match side {
            Side::Cp => scalar::int(m),
            Side::Cop => scalar::int(-m),
        };
        let ray = embedded_rank_one(n, block, (scalar::one(), t));
        if !face.contains(&ray)? {
            return Err(Error::UnsupportedFace(format!(
                "ray {ray} is not in {face}"
            )));
        }
        rays.push(ray);
    }
    Ok(RayFamily {
        pattern: face.pattern.clone(),
        block,
        rays,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RayCertificate {
    /// `⟨Y, r_other⟩ ≥ 0` for every other ray and `⟨Y, r⟩ < 0`.
    Independent { separator: SymMatrix },
    /// `r = Σ weight · rays[ray]` with nonnegative weights.
    Dependent { weights: Vec<RayWeight> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayWeight {
    pub ray: usize,
    #[serde(with = "scalar::serde_scalar")]
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicIndependence {
    pub per_ray: Vec<RayCertificate>,
}

impl ConicIndependence {
    pub fn independent(&self) -> bool {
        self.per_ray
            .iter()
            .all(|c| matches!(c, RayCertificate::Independent { .. }))
    }

    pub fn independent_count(&self) -> usize {
        self.per_ray
            .iter()
            .filter(|c| matches!(c, RayCertificate::Independent { .. }))
            .count()
    }

    /// Re-checks every certificate against `rays` from scratch.
    pub fn verify(&self, rays: &[SymMatrix]) -> Result<()> {
        if self.per_ray.len() != rays.len() {
            return Err(Error::InvalidCertificate(
                "one certificate per ray expected".into(),
            ));
        }
        for (idx, (cert, r)) in self.per_ray.iter().zip(rays).enumerate() {
            match cert {
                RayCertificate::Independent { separator } => {
                    if !inner_product(separator, r)?.is_negative() {
                        return Err(Error::InvalidCertificate(format!(
                            "separator of ray {idx} is not negative on it"
                        )));
                    }
                    for (o, other) in rays.iter().enumerate().filter(|&(o, _)| o != idx) {
                        if inner_product(separator, other)?.is_negative() {
                            return Err(Error::InvalidCertificate(format!(
                                "separator of ray {idx} is negative on ray {o}"
                            )));
                        }
                    }
                }
                RayCertificate::Dependent { weights } => {
                    let mut acc = SymMatrix::zeros(r.order());
                    for RayWeight { ray: o, weight: w } in weights {
                        if *o == idx || *o >= rays.len() || w.is_negative() {
                            return Err(Error::InvalidCertificate(format!(
                                "bad weight on ray {o}"
                            )));
                        }
                        acc.add_scaled(w, &rays[*o])?;
                    }
                    if acc != *r {
                        return Err(Error::InvalidCertificate(format!(
                            "weights do not reproduce ray {idx}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// For a rank-one `r` supported on a 2×2 principal block, `Y = b bᵀ` with
/// `b ⊥ a` vanishes on `r` and is positive on every non-proportional
/// rank-one ray of the block. Shifting by `-δ r` makes it strictly negative
/// on `r`. Returns `None` when the shortcut does not apply or fails.
fn rank_one_separator(r: &SymMatrix, others: &[&SymMatrix]) -> Result<Option<SymMatrix>> {
    let n = r.order();
    let support: Vec<usize> = (0..n)
        .filter(|&i| (0..n).any(|j| !r.get(i, j).is_zero()))
        .collect();
    let (k, l) = match support.as_slice() {
        [k] => (
            *k,
            if *k + 1 < n {
                *k + 1
            } else {
                k.saturating_sub(1)
            },
        ),
        [k, l] => (*k, *l),
        _ => return Ok(None),
    };
    if k == l {
        return Ok(None);
    }
    let (p, q, s) = (r.get(k, k), r.get(k, l), r.get(l, l));
    if p * s != q * q {
        return Ok(None);
    }
    // Rows of the block are proportional to (p, q), or to (q, s) if p = 0.
    let (b0, b1) = if !p.is_zero() {
        (-q.clone(), p.clone())
    } else {
        (s.clone(), -q.clone())
    };
    let mut y = SymMatrix::zeros(n);
    y.set(k, k, &b0 * &b0);
    y.set(k, l, &b0 * &b1);
    y.set(l, l, &b1 * &b1);

    let mut delta: Option<Scalar> = None;
    for o in others {
        let yo = inner_product(&y, o)?;
        if !yo.is_positive() {
            return Ok(None);
        }
        let ro = inner_product(r, o)?;
        if ro.is_positive() {
            let cap = yo / ro;
            if delta.as_ref().is_none_or(|d| cap < *d) {
                delta = Some(cap);
            }
        }
    }
    let delta = delta.unwrap_or_else(scalar::one);
    y.add_scaled(&-delta, r)?;
    Ok(Some(y))
}

/// Exact LP: is there `Y` with `⟨Y, r_o⟩ ≥ 0` for all others and `⟨Y, r⟩ ≤ -1`?
fn lp_certificate(idx: usize, rays: &[SymMatrix]) -> Result<RayCertificate> {
    let n = rays[idx].order();
    let coords: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rays.iter().any(|r| !r.get(i, j).is_zero()))
        .collect();
    let weight = |i: usize, j: usize| {
        if i == j {
            scalar::one()
        } else {
            scalar::int(2)
        }
    };
    let row = |m: &SymMatrix, sign: &Scalar| -> Vec<Scalar> {
        coords
            .iter()
            .map(|&(i, j)| m.get(i, j) * weight(i, j) * sign)
            .collect()
    };
    let others: Vec<usize> = (0..rays.len()).filter(|&o| o != idx).collect();
    let mut system: Vec<(Vec<Scalar>, Scalar)> = others
        .iter()
        .map(|&o| (row(&rays[o], &scalar::one()), Scalar::zero()))
        .collect();
    system.push((row(&rays[idx], &scalar::int(-1)), scalar::one()));

    match fourier_motzkin(&system, coords.len()) {
        Feasibility::Feasible(x) => {
            let mut y = SymMatrix::zeros(n);
            for (&(i, j), v) in coords.iter().zip(x) {
                y.set(i, j, v);
            }
            Ok(RayCertificate::Independent { separator: y })
        }
        Feasibility::Infeasible(mu) => {
            let lead = mu.last().expect("target row").clone();
            if !lead.is_positive() {
                return Err(Error::InvalidCertificate(
                    "Farkas multipliers ignore the target ray".into(),
                ));
            }
            let weights = others
                .iter()
                .zip(&mu)
                .filter(|(_, m)| !m.is_zero())
                .map(|(&o, m)| RayWeight {
                    ray: o,
                    weight: m / &lead,
                })
                .collect();
            Ok(RayCertificate::Dependent { weights })
        }
    }
}

/// Decides for each ray whether it lies in the cone of the others.
pub fn conic_independence(rays: &[SymMatrix]) -> Result<ConicIndependence> {
    if let Some(first) = rays.first() {
        for r in rays {
            first.try_add(r)?;
        }
    }
    let mut per_ray = Vec::with_capacity(rays.len());
    for idx in 0..rays.len() {
        let others: Vec<&SymMatrix> = rays
            .iter()
            .enumerate()
            .filter(|&(o, _)| o != idx)
            .map(|(_, r)| r)
            .collect();
        let cert = match rank_one_separator(&rays[idx], &others)? {
            Some(separator) => RayCertificate::Independent { separator },
            None => lp_certificate(idx, rays)?,
        };
        per_ray.push(cert);
    }
    let result = ConicIndependence { per_ray };
    result.verify(rays)?;
    Ok(result)
}

/// Exposes the general LP path for testing the shortcut against it.
#[doc(hidden)]
pub fn conic_independence_lp(rays: &[SymMatrix]) -> Result<ConicIndependence> {
    let per_ray = (0..rays.len())
        .map(|idx| lp_certificate(idx, rays))
        .collect::<Result<Vec<_>>>()?;
    let result = ConicIndependence { per_ray };
    result.verify(rays)?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{ConeId, ConeKind};
    use crate::patterns::{build_i, build_j};

    fn m(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn three_rays_in_cp2() {
        let rays = [
            m(&[&[1, 0], &[0, 0]]),
            m(&[&[0, 0], &[0, 1]]),
            m(&[&[1, 1], &[1, 1]]),
        ];
        assert!(conic_independence(&rays).unwrap().independent());
        assert!(conic_independence_lp(&rays).unwrap().independent());
    }

    #[test]
    fn proportional_rays_are_dependent() {
        let r = m(&[&[1, 2], &[2, 4]]);
        let rays = [r.clone(), r.scaled(&scalar::int(2))];
        let c = conic_independence(&rays).unwrap();
        assert!(!c.independent());
        assert_eq!(
            c.per_ray[0],
            RayCertificate::Dependent {
                weights: vec![RayWeight {
                    ray: 1,
                    weight: scalar::ratio(1, 2)
                }]
            }
        );
    }

    #[test]
    fn sum_of_two_is_dependent() {
        let rays = [
            m(&[&[1, 0], &[0, 0]]),
            m(&[&[0, 0], &[0, 1]]),
            m(&[&[1, 0], &[0, 1]]),
        ];
        let c = conic_independence(&rays).unwrap();
        assert_eq!(c.independent_count(), 2);
        assert!(matches!(c.per_ray[2], RayCertificate::Dependent { .. }));
    }

    #[test]
    fn ten_rays_one_m() {
        let rays: Vec<_> = (1..=10)
            .map(|k| embedded_rank_one(2, (1, 2), (scalar::one(), scalar::int(k))))
            .collect();
        assert!(conic_independence(&rays).unwrap().independent());
        assert!(conic_independence_lp(&rays).unwrap().independent());
    }

    #[test]
    fn families_on_chain_faces() {
        let cp = Face::new(
            ConeId::new(ConeKind::Cp, 3).unwrap(),
            build_i(3, 1, 1).unwrap(),
        )
        .unwrap();
        let fam = extreme_ray_family(&cp, Side::Cp, 4).unwrap();
        assert_eq!(fam.block, (2, 3));
        assert_eq!(fam.rays.len(), 4);
        assert!(conic_independence(&fam.rays).unwrap().independent());

        let cop = Face::new(
            ConeId::new(ConeKind::Cop, 3).unwrap(),
            build_j(3, 1, 3).unwrap(),
        )
        .unwrap();
        let fam = extreme_ray_family(&cop, Side::Cop, 4).unwrap();
        assert_eq!(fam.rays[0], m(&[&[0, 0, 0], &[0, 1, -1], &[0, -1, 1]]));
        assert!(conic_independence(&fam.rays).unwrap().independent());

        let single = extreme_ray_family(&cp, Side::Cp, 1).unwrap();
        assert!(conic_independence(&single.rays).unwrap().independent());

        let dead = Face::new(
            ConeId::new(ConeKind::Dnn, 3).unwrap(),
            build_i(3, 2, 3).unwrap(),
        )
        .unwrap();
        assert!(extreme_ray_family(&dead, Side::Cp, 4).is_err());
    }

    #[test]
    fn thirty_two_rays_both_sides() {
        for (kind, side) in [
            (ConeKind::Dnn, Side::Cp),
            (ConeKind::DualSDDPlus, Side::Cop),
        ] {
            let face = Face::new(ConeId::new(kind, 2).unwrap(), IndexSet::empty(2)).unwrap();
            let fam = extreme_ray_family(&face, side, DEFAULT_RAY_COUNT).unwrap();
            let c = conic_independence(&fam.rays).unwrap();
            assert_eq!(c.independent_count(), 32);
        }
    }

    #[test]
    fn tampered_certificate_rejected() {
        let rays = [m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]])];
        let mut c = conic_independence(&rays).unwrap();
        c.per_ray[0] = RayCertificate::Independent {
            separator: m(&[&[1, 0], &[0, 0]]),
        };
        assert!(c.verify(&rays).is_err());
    }
}
