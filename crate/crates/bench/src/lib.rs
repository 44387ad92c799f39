//! Fixed inputs shared by the benchmarks.

use facelattice::{ConeId, ConeKind, SymMatrix};

/// The 5×5 Horn matrix: copositive, not SPN.
pub fn horn() -> SymMatrix {
    SymMatrix::from_i64(&[
        &[1, -1, 1, 1, -1],
        &[-1, 1, -1, 1, 1],
        &[1, -1, 1, -1, 1],
        &[1, 1, -1, 1, -1],
        &[-1, 1, 1, -1, 1],
    ])
    .expect("square and symmetric")
}

/// A dense DNN member `G Gᵀ` with a small nonnegative integer `G`.
pub fn dense_dnn(n: usize) -> SymMatrix {
    let g: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 3) % 5) as i64).collect())
        .collect();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| g[i][k] * g[j][k]).sum())
                .collect()
        })
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    SymMatrix::from_i64(&refs).expect("Gram matrices are symmetric")
}

pub fn cone(kind: ConeKind, n: usize) -> ConeId {
    ConeId::new(kind, n).expect("supported order")
}
