//! Symmetric matrices with exact entries, stored as the upper triangle.
//!
//! Accessors take 0-based `(row, col)`; `(i, j)` with `i > j` is mirrored
//! at access time. Index sets in [`crate::patterns`] are 1-based and convert
//! through [`SymMatrix::at`].

use std::fmt;

use num::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::patterns::Pair;
use crate::scalar::{self, Scalar};

/// `T_n = n(n+1)/2`, the dimension of the space of `n x n` symmetric matrices.
pub const fn triangular(n: usize) -> usize {
    n * (n + 1) / 2
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<Scalar>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            upper: vec![Scalar::zero(); triangular(n)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, scalar::one());
        }
        m
    }

    /// Builds a matrix from full rows; fails unless square and symmetric.
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                m.set(i, j, rows[i][j].clone());
            }
        }
        Ok(m)
    }

    /// Integer convenience constructor, mostly for tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(
            j < self.n,
            "index ({i},{j}) out of range for order {}",
            self.n
        );
        i * self.n - i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.upper[self.offset(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let k = self.offset(i, j);
        self.upper[k] = v;
    }

    /// Entry addressed by a 1-based upper-triangle pair.
    pub fn at(&self, p: Pair) -> &Scalar {
        self.get(p.i - 1, p.j - 1)
    }

    /// Upper-triangle entries in row-major order, length `T_n`.
    pub fn upper(&self) -> &[Scalar] {
        &self.upper
    }

    /// Iterates `(i, j, value)` over the upper triangle, 0-based.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i..n).map(move |j| (i, j)))
            .zip(self.upper.iter())
            .map(|((i, j), v)| (i, j, v))
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Zero::is_zero)
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(Self {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(Self {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self {
            n: self.n,
            upper: self.upper.iter().map(|a| a * c).collect(),
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) -> Result<()> {
        self.check_same_order(other)?;
        for (a, b) in self.upper.iter_mut().zip(&other.upper) {
            *a += c * b;
        }
        Ok(())
    }

    /// `A ⊕ O`: embeds `self` as the leading block of an order-`n` matrix.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: n,
            });
        }
        let mut m = Self::zeros(n);
        for (i, j, v) in self.upper_entries() {
            m.set(i, j, v.clone());
        }
        Ok(m)
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (i, j, v) in self.upper_entries() {
            if v.is_zero() || x[i].is_zero() || x[j].is_zero() {
                continue;
            }
            let term = v * &x[i] * &x[j];
            if i == j {
                acc += term;
            } else {
                acc += &term + &term;
            }
        }
        Ok(acc)
    }

    /// First negative entry in row-major upper-triangle order, 0-based.
    pub fn first_negative(&self) -> Option<(usize, usize)> {
        self.upper_entries()
            .find(|(_, _, v)| v.is_negative())
            .map(|(i, j, _)| (i, j))
    }

    /// `M(A)`: same diagonal, negated absolute off-diagonal entries.
    pub fn comparison(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let v = -self.get(i, j).abs();
                m.set(i, j, v);
            }
        }
        m
    }

    /// Parses the `symmat v1` text format: the order on the first line, then
    /// row `i` of the lower triangle (`i` entries) on each following line.
    /// Blank lines and `#` comments are skipped.
    pub fn parse_symmat(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: first_line,
            message: format!("expected order, found {header:?}"),
        })?;
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut m = Self::zeros(n);
        for row in 0..n {
            let (line, content) = lines.next().ok_or(Error::Parse {
                line: first_line + row + 1,
                message: format!("missing row {}", row + 1),
            })?;
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != row + 1 {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "row {} must hold {} entries, found {}",
                        row + 1,
                        row + 1,
                        tokens.len()
                    ),
                });
            }
            for (col, tok) in tokens.iter().enumerate() {
                let v = scalar::parse(tok).map_err(|message| Error::Parse { line, message })?;
                m.set(row, col, v);
            }
        }
        if let Some((line, extra)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: format!("trailing content {extra:?}"),
            });
        }
        Ok(m)
    }

    /// Emits canonical `symmat v1` text; `parse_symmat` inverts it exactly.
    pub fn to_symmat(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..=i).map(|j| scalar::format(self.get(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `⟨A, B⟩ = Σ_{i,j} A_ij B_ij`, off-diagonal terms counted twice.
pub fn inner_product(a: &SymMatrix, b: &SymMatrix) -> Result<Scalar> {
    a.check_same_order(b)?;
    let mut acc = Scalar::zero();
    for ((i, j, x), y) in a.upper_entries().zip(b.upper.iter()) {
        let t = x * y;
        if i == j {
            acc += t;
        } else {
            acc += &t + &t;
        }
    }
    Ok(acc)
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymMatrix{self}")
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", scalar::format(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| scalar::format(self.get(i, j)))
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn mirrored_access() {
        let mut m = SymMatrix::zeros(3);
        m.set(2, 0, int(5));
        assert_eq!(m.get(0, 2), &int(5));
        assert_eq!(m.get(2, 0), &int(5));
        assert_eq!(m.upper().len(), triangular(3));
    }

    #[test]
    fn inner_product_examples() {
        let i2 = SymMatrix::identity(2);
        assert_eq!(inner_product(&i2, &i2).unwrap(), int(2));

        let a = SymMatrix::from_i64(&[&[3, -5], &[-5, 7]]).unwrap();
        let e12 = SymMatrix::from_i64(&[&[1, 1], &[1, 1]]).unwrap();
        // A_11 + A_22 + 2 A_12
        assert_eq!(inner_product(&a, &e12).unwrap(), int(3 + 7 - 10));
        assert_eq!(inner_product(&a, &SymMatrix::zeros(2)).unwrap(), int(0));
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let err = inner_product(&SymMatrix::zeros(2), &SymMatrix::zeros(3)).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                actual: 3
            }
        );
    }

    #[test]
    fn symmat_round_trip() {
        let text = "3\n1\n-1/2 0\n3 7/3 -4\n";
        let m = SymMatrix::parse_symmat(text).unwrap();
        assert_eq!(m.get(0, 1), &ratio(-1, 2));
        assert_eq!(m.get(1, 2), &ratio(7, 3));
        assert_eq!(m.to_symmat(), text);
    }

    #[test]
    fn symmat_rejects_malformed() {
        assert!(matches!(
            SymMatrix::parse_symmat(""),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            SymMatrix::parse_symmat("2\n1 2\n3 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SymMatrix::parse_symmat("2\n1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            SymMatrix::parse_symmat("1\n1/0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            SymMatrix::parse_symmat("1\n1\n2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(SymMatrix::parse_symmat("0\n"), Err(Error::ZeroOrder));
    }

    #[test]
    fn comparison_matrix() {
        let a = SymMatrix::from_i64(&[&[1, 2], &[2, 8]]).unwrap();
        assert_eq!(
            a.comparison(),
            SymMatrix::from_i64(&[&[1, -2], &[-2, 8]]).unwrap()
        );
    }

    #[test]
    fn from_rows_rejects_asymmetric() {
        assert!(SymMatrix::from_i64(&[&[1, 2], &[3, 4]]).is_err());
    }
}
