//! Exact random members of each cone, built from generator families so no
//! rejection against a hard oracle is needed.
//!
//! `sample_member(cone, pattern, rng)` returns a member of the pattern face
//! `K[pattern]`; pass an empty pattern to sample the whole cone.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ConeId, ConeKind};
use crate::matrix::SymMatrix;
use crate::patterns::{generator_e, IndexSet};
use crate::scalar::{self, Scalar};

/// Deterministic sampler seeded per use.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn member(&mut self, cone: &ConeId, pattern: &IndexSet) -> SymMatrix {
        sample_member(cone, pattern, &mut self.rng)
    }

    pub fn symmetric(&mut self, n: usize, bound: i64) -> SymMatrix {
        random_symmetric(n, bound, &mut self.rng)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

fn nonneg_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    scalar::ratio(rng.gen_range(0..=6), rng.gen_range(1..=3))
}

fn positive_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    scalar::ratio(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

/// Uniform fraction in `[-1, 1]` with small denominator.
fn unit_fraction<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let q = rng.gen_range(1..=4);
    scalar::ratio(rng.gen_range(-q..=q), q)
}

/// Symmetric matrix with entries `p/q`, `|p| ≤ bound`, `q ∈ {1, 2, 3}`.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(
                i,
                j,
                scalar::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3)),
            );
        }
    }
    m
}

/// Indices (0-based) that no pair of `pattern` touches.
fn untouched(pattern: &IndexSet) -> Vec<usize> {
    let n = pattern.order();
    (0..n)
        .filter(|&k| pattern.iter().all(|p| p.i != k + 1 && p.j != k + 1))
        .collect()
}

fn nonneg_member<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    let n = pattern.order();
    let mut m = SymMatrix::zeros(n);
    for p in pattern.free_pairs() {
        if rng.gen_bool(0.7) {
            m.set(p.i - 1, p.j - 1, nonneg_scalar(rng));
        }
    }
    m
}

fn dd_plus_member<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    let n = pattern.order();
    let mut m = SymMatrix::zeros(n);
    for p in pattern.free_pairs() {
        let allowed = !pattern.contains(p.i, p.i) && !pattern.contains(p.j, p.j);
        if allowed && rng.gen_bool(0.6) {
            let e = generator_e(n, p.i, p.j).expect("pair in range");
            m.add_scaled(&nonneg_scalar(rng), &e).expect("same order");
        }
    }
    m
}

/// Sums of nonnegative rank-one terms supported on two coordinates, which
/// span `SDD_+^n`.
fn sdd_plus_member<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    let n = pattern.order();
    let mut m = SymMatrix::zeros(n);
    for p in pattern.free_pairs() {
        let block_free = !pattern.contains(p.i, p.i) && !pattern.contains(p.j, p.j);
        if !block_free || !rng.gen_bool(0.6) {
            continue;
        }
        let (i, j) = (p.i - 1, p.j - 1);
        if i == j {
            let c = nonneg_scalar(rng);
            let v = m.get(i, i) + &c;
            m.set(i, i, v);
        } else {
            let (a, b) = (nonneg_scalar(rng), nonneg_scalar(rng));
            let vi = m.get(i, i) + &a * &a;
            let vj = m.get(j, j) + &b * &b;
            let vij = m.get(i, j) + &a * &b;
            m.set(i, i, vi);
            m.set(j, j, vj);
            m.set(i, j, vij);
        }
    }
    m
}

/// `G Gᵀ` with `G` supported on `rows`.
fn gram<R: Rng + ?Sized>(n: usize, rows: &[usize], nonneg: bool, rng: &mut R) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    if rows.is_empty() {
        return m;
    }
    let rank = rng.gen_range(1..=rows.len());
    for _ in 0..rank {
        let g: Vec<(usize, Scalar)> = rows
            .iter()
            .map(|&k| {
                let v = if nonneg {
                    nonneg_scalar(rng)
                } else {
                    scalar::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2))
                };
                (k, v)
            })
            .collect();
        add_outer(&mut m, &g);
    }
    m
}

fn add_outer(m: &mut SymMatrix, v: &[(usize, Scalar)]) {
    for (a, (i, vi)) in v.iter().enumerate() {
        for (j, vj) in &v[a..] {
            let x = m.get(*i, *j) + vi * vj;
            m.set(*i, *j, x);
        }
    }
}

/// `Σ g gᵀ` with `g ≥ 0` whose supports avoid every pair of the pattern.
fn cp_member<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    let n = pattern.order();
    let mut m = SymMatrix::zeros(n);
    let terms = rng.gen_range(1..=n + 1);
    let mut order: Vec<usize> = (1..=n).collect();
    for _ in 0..terms {
        order.shuffle(rng);
        let mut support: Vec<usize> = Vec::new();
        for &k in &order {
            if !support.is_empty() && rng.gen_bool(0.4) {
                break;
            }
            let compatible =
                !pattern.contains(k, k) && support.iter().all(|&s| !pattern.contains(s, k));
            if compatible {
                support.push(k);
            }
        }
        let g: Vec<(usize, Scalar)> = support
            .iter()
            .map(|&k| (k - 1, positive_scalar(rng)))
            .collect();
        add_outer(&mut m, &g);
    }
    m
}

/// The Horn matrix, copositive but not in `SPN^5`.
pub(crate) fn horn() -> SymMatrix {
    SymMatrix::from_i64(&[
        &[1, -1, 1, 1, -1],
        &[-1, 1, -1, 1, 1],
        &[1, -1, 1, -1, 1],
        &[1, 1, -1, 1, -1],
        &[-1, 1, 1, -1, 1],
    ])
    .expect("symmetric")
}

fn spn_member<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    let n = pattern.order();
    let free = untouched(pattern);
    let mut m = gram(n, &free, false, rng);
    m = m.try_add(&nonneg_member(pattern, rng)).expect("same order");
    m
}

/// SPN members, plus (for five or more untouched indices) a positively
/// scaled embedded Horn matrix, which keeps copositivity.
fn cop_member<R: Rng + ?Sized>(pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    let mut m = spn_member(pattern, rng);
    let free = untouched(pattern);
    if free.len() >= 5 && rng.gen_bool(0.5) {
        let mut idx = free.clone();
        idx.shuffle(rng);
        idx.truncate(5);
        let d: Vec<Scalar> = (0..5).map(|_| positive_scalar(rng)).collect();
        let h = horn();
        for a in 0..5 {
            for b in a..5 {
                let v = m.get(idx[a], idx[b]) + h.get(a, b) * &d[a] * &d[b];
                m.set(idx[a], idx[b], v);
            }
        }
    }
    m
}

/// `B + N` with `B` in the first summand of the dual description.
/// `wide` allows `|B_ij| ≤ (B_ii + B_jj)/2` (the `(DD_+)^*` summand);
/// otherwise `|B_ij| ≤ min(B_ii, B_jj)` (inside the `(SDD_+)^*` summand).
fn dual_member<R: Rng + ?Sized>(pattern: &IndexSet, wide: bool, rng: &mut R) -> SymMatrix {
    let n = pattern.order();
    let mut b = SymMatrix::zeros(n);
    for k in 1..=n {
        if !pattern.contains(k, k) && rng.gen_bool(0.8) {
            b.set(k - 1, k - 1, nonneg_scalar(rng));
        }
    }
    for p in pattern.free_pairs().filter(|p| !p.is_diagonal()) {
        let (di, dj) = (
            b.get(p.i - 1, p.i - 1).clone(),
            b.get(p.j - 1, p.j - 1).clone(),
        );
        let cap = if wide {
            (&di + &dj) / scalar::int(2)
        } else {
            scalar::min(&di, &dj)
        };
        b.set(p.i - 1, p.j - 1, unit_fraction(rng) * cap);
    }
    b.try_add(&nonneg_member(pattern, rng)).expect("same order")
}

/// A random member of `cone[pattern]`.
pub fn sample_member<R: Rng + ?Sized>(cone: &ConeId, pattern: &IndexSet, rng: &mut R) -> SymMatrix {
    assert_eq!(
        cone.order(),
        pattern.order(),
        "pattern order must match the cone"
    );
    let n = cone.order();
    match cone.kind() {
        ConeKind::Nonneg => nonneg_member(pattern, rng),
        ConeKind::DDPlus => dd_plus_member(pattern, rng),
        ConeKind::SDDPlus => sdd_plus_member(pattern, rng),
        ConeKind::Dnn | ConeKind::Cp => cp_member(pattern, rng),
        ConeKind::Psd => gram(n, &untouched(pattern), false, rng),
        ConeKind::Spn => spn_member(pattern, rng),
        ConeKind::Cop => cop_member(pattern, rng),
        ConeKind::DualSDDPlus => dual_member(pattern, false, rng),
        ConeKind::DualDDPlus => dual_member(pattern, true, rng),
    }
}
