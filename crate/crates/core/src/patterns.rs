//! Zero-pattern index sets and the matrices built from them.
//!
//! Pairs are 1-based upper-triangle indices `(i, j)` with `i ≤ j`. The two
//! families of nested patterns are
//!
//! * `I_ij`: rows `1..i-1` entirely, plus `(i, l)` for `l ≥ j`;
//! * `J_ij`: rows `1..i-1` entirely, plus `(i, l)` for `i ≤ l ≤ j`;
//!
//! with the boundary aliases `I_00 = ∅`, `I_{i,n+1} = I_{i-1,i-1}`,
//! `J_0n = ∅` and `J_{i,i-1} = J_{i-1,n}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub i: usize,
    pub j: usize,
}

impl Pair {
    /// Normalizes to `i ≤ j`.
    pub fn new(i: usize, j: usize) -> Self {
        if i <= j {
            Pair { i, j }
        } else {
            Pair { i: j, j: i }
        }
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All upper-triangle pairs of order `n` in row-major order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Pair> {
    (1..=n).flat_map(move |i| (i..=n).map(move |j| Pair { i, j }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n: usize,
    pairs: BTreeSet<Pair>,
}

impl IndexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            pairs: BTreeSet::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            pairs: all_pairs(n).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = Self::empty(n);
        for (i, j) in pairs {
            set.insert(Pair::new(i, j))?;
        }
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn insert(&mut self, p: Pair) -> Result<bool> {
        let p = Pair::new(p.i, p.j);
        if p.i == 0 || p.j > self.n {
            return Err(Error::IndexOutOfRange {
                what: "index set",
                n: self.n,
                i: p.i,
                j: p.j,
            });
        }
        Ok(self.pairs.insert(p))
    }

    pub fn with(mut self, p: Pair) -> Result<Self> {
        self.insert(p)?;
        Ok(self)
    }

    /// Membership of `(i, j)` or its transpose.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&Pair::new(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn difference(&self, other: &IndexSet) -> Vec<Pair> {
        self.pairs.difference(&other.pairs).copied().collect()
    }

    /// Pairs not in the set, row-major.
    pub fn free_pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        all_pairs(self.n).filter(move |p| !self.pairs.contains(p))
    }

    /// True when `m` vanishes on every pair of the set.
    pub fn annihilates(&self, m: &SymMatrix) -> bool {
        use num::Zero;
        self.pairs.iter().all(|&p| m.at(p).is_zero())
    }

    /// First pair of the set where `m` is nonzero.
    pub fn first_violation(&self, m: &SymMatrix) -> Option<Pair> {
        use num::Zero;
        self.pairs.iter().copied().find(|&p| !m.at(p).is_zero())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn rows_before(n: usize, i: usize) -> impl Iterator<Item = Pair> {
    (1..i).flat_map(move |k| (k..=n).map(move |l| Pair { i: k, j: l }))
}

/// `I_ij` of order `n`. Accepts `(0, 0)` and `1 ≤ i ≤ n, i ≤ j ≤ n + 1`.
pub fn build_i(n: usize, i: usize, j: usize) -> Result<IndexSet> {
    let out_of_range = || Error::IndexOutOfRange { what: "I", n, i, j };
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    match (i, j) {
        (0, 0) => Ok(IndexSet::empty(n)),
        (0, _) => Err(out_of_range()),
        _ if i > n || j < i || j > n + 1 => Err(out_of_range()),
        _ if j == n + 1 => {
            if i == 1 {
                build_i(n, 0, 0)
            } else {
                build_i(n, i - 1, i - 1)
            }
        }
        _ => Ok(IndexSet {
            n,
            pairs: rows_before(n, i)
                .chain((j..=n).map(|l| Pair { i, j: l }))
                .collect(),
        }),
    }
}

/// `J_ij` of order `n`. Accepts `(0, n)` and `1 ≤ i ≤ n, i - 1 ≤ j ≤ n`.
pub fn build_j(n: usize, i: usize, j: usize) -> Result<IndexSet> {
    let out_of_range = || Error::IndexOutOfRange { what: "J", n, i, j };
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    match (i, j) {
        (0, j) if j == n => Ok(IndexSet::empty(n)),
        (0, _) => Err(out_of_range()),
        _ if i > n || j + 1 < i || j > n => Err(out_of_range()),
        _ if j + 1 == i => build_j(n, i - 1, n),
        _ => Ok(IndexSet {
            n,
            pairs: rows_before(n, i)
                .chain((i..=j).map(|l| Pair { i, j: l }))
                .collect(),
        }),
    }
}

/// `E_ij = (e_i + e_j)(e_i + e_j)ᵀ`, 1-based.
pub fn generator_e(n: usize, i: usize, j: usize) -> Result<SymMatrix> {
    if i == 0 || i > j || j > n {
        return Err(Error::IndexOutOfRange { what: "E", n, i, j });
    }
    let mut m = SymMatrix::zeros(n);
    if i == j {
        m.set(i - 1, i - 1, scalar::int(4));
    } else {
        m.set(i - 1, i - 1, scalar::one());
        m.set(j - 1, j - 1, scalar::one());
        m.set(i - 1, j - 1, scalar::one());
    }
    Ok(m)
}

/// `E[I]`: zero on `I` and its transpose, one elsewhere.
pub fn pattern_matrix_e(set: &IndexSet) -> SymMatrix {
    let mut m = SymMatrix::zeros(set.order());
    for p in set.free_pairs() {
        m.set(p.i - 1, p.j - 1, scalar::one());
    }
    m
}

/// Symmetric unit matrix with ones at `(i, j)` and `(j, i)`, 1-based.
pub fn unit_matrix(n: usize, p: Pair) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    m.set(p.i - 1, p.j - 1, scalar::one());
    m
}

/// CP-side patterns from the full cone down: `I_00, I_1n, …, I_11, I_2n, …, I_nn`.
pub fn cp_sequence(n: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0)];
    for i in 1..=n {
        out.extend((i..=n).rev().map(|j| (i, j)));
    }
    out
}

/// COP-side patterns from the full cone down: `J_0n, J_11, …, J_1n, J_22, …, J_nn`.
pub fn cop_sequence(n: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(0, n)];
    for i in 1..=n {
        out.extend((i..=n).map(|j| (i, j)));
    }
    out
}

/// Legacy CP-side order from the full cone down: every off-diagonal pair in
/// row-major order, then the diagonal.
pub fn legacy_sequence(n: usize) -> Vec<IndexSet> {
    let mut current = IndexSet::empty(n);
    let mut out = vec![current.clone()];
    let off = all_pairs(n).filter(|p| !p.is_diagonal());
    let diag = (1..=n).map(|k| Pair { i: k, j: k });
    for p in off.chain(diag) {
        current.pairs.insert(p);
        out.push(current.clone());
    }
    out
}
