//! Small dense exact linear algebra: row reduction, rank, and solving.

use num::Zero;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Scalar>),
    Inconsistent,
    /// Consistent with free variables. `particular` sets every free variable
    /// to zero; `determined[k]` is true when variable `k` takes the same
    /// value on the whole solution set.
    Continuum {
        particular: Vec<Scalar>,
        determined: Vec<bool>,
    },
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a family of vectors of equal length.
pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut rows = vectors.to_vec();
    rref(&mut rows, ncols).len()
}

/// Solves `M z = b` for square or rectangular `M`.
pub fn solve(matrix: &[Vec<Scalar>], rhs: &[Scalar]) -> LinearSolution {
    let nvars = matrix.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Scalar>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return LinearSolution::Inconsistent;
    }
    let mut z = vec![Scalar::zero(); nvars];
    for (r, &c) in pivots.iter().enumerate() {
        z[c] = aug[r][nvars].clone();
    }
    if pivots.len() == nvars {
        return LinearSolution::Unique(z);
    }
    let mut determined = vec![false; nvars];
    for (r, &c) in pivots.iter().enumerate() {
        determined[c] = (0..nvars).all(|k| k == c || pivots.contains(&k) || aug[r][k].is_zero());
    }
    LinearSolution::Continuum {
        particular: z,
        determined,
    }
}
