//! Exact finite-depth unit-lower-triangular matrices and the band-shift
//! constructions that drive the iterated inversion processes.
//!
//! Storage is dense over the lower triangle only: row n holds the n+1
//! entries (n,0)..(n,n). Invariants:
//! - every diagonal entry is 1 (checked at construction);
//! - entries above the diagonal are identically zero and never stored;
//! - indexing is 0-based throughout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(usize, usize),
    #[error("row {0} does not end in a unit diagonal entry")]
    NonUnitDiagonal(usize),
    #[error("row {0} has {1} entries, expected {2}")]
    RaggedRow(usize, usize, usize),
    #[error("depth {0} is too small, need at least {1}")]
    DepthTooSmall(usize, usize),
}

/// Lower-triangular integer matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitLowerTriangular {
    rows: Vec<Vec<BigInt>>,
}

impl UnitLowerTriangular {
    /// Identity matrix of the given depth.
    pub fn identity(depth: usize) -> Self {
        assert!(depth >= 1, "depth must be positive");
        let rows = (0..depth)
            .map(|n| {
                let mut row = vec![BigInt::zero(); n + 1];
                row[n] = BigInt::one();
                row
            })
            .collect();
        UnitLowerTriangular { rows }
    }

    /// Build from lower-triangle rows; row n must have n+1 entries and end
    /// in 1.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, TriangleError> {
        if rows.is_empty() {
            return Err(TriangleError::DepthTooSmall(0, 1));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(TriangleError::RaggedRow(n, row.len(), n + 1));
            }
            if !row[n].is_one() {
                return Err(TriangleError::NonUnitDiagonal(n));
            }
        }
        Ok(UnitLowerTriangular { rows })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, TriangleError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    /// Toeplitz sequence array: entry (n,k) = terms[n-k]. Requires
    /// terms[0] = 1 so the diagonal is a unit.
    pub fn sequence_array(terms: &[BigInt], depth: usize) -> Result<Self, TriangleError> {
        assert!(terms.len() >= depth, "need {} terms for depth {}", depth, depth);
        let rows = (0..depth)
            .map(|n| (0..=n).map(|k| terms[n - k].clone()).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// Entry (n, k) with Iverson semantics: zero above the diagonal.
    /// Panics if n is out of range.
    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Leading principal submatrix of the given depth.
    pub fn truncate(&self, depth: usize) -> Self {
        assert!(depth >= 1 && depth <= self.depth());
        UnitLowerTriangular { rows: self.rows[..depth].to_vec() }
    }

    /// Exact matrix product; both factors must have the same depth.
    pub fn multiply(&self, other: &Self) -> Result<Self, TriangleError> {
        if self.depth() != other.depth() {
            return Err(TriangleError::DepthMismatch(self.depth(), other.depth()));
        }
        let d = self.depth();
        let rows = (0..d)
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|j| &self.rows[n][j] * &other.rows[j][k]).sum())
                    .collect()
            })
            .collect();
        Ok(UnitLowerTriangular { rows })
    }

    /// Exact inverse by forward substitution, column by column. Unit
    /// triangular matrices are always invertible over the integers.
    pub fn inverse(&self) -> Self {
        let d = self.depth();
        let mut inv = Self::identity(d);
        for k in 0..d {
            for n in (k + 1)..d {
                let acc: BigInt = (k..n).map(|j| &self.rows[n][j] * &inv.rows[j][k]).sum();
                inv.rows[n][k] = -acc;
            }
        }
        inv
    }

    /// Two-band down-shift: I - a*S - b*S^2 - S^2*(M - I), where S is the
    /// subdiagonal shift. Column k reads 1, -a, -b, then the negated
    /// strictly-lower entries of column k of M moved down two rows.
    pub fn ab_shift(&self, a: &BigInt, b: &BigInt) -> Self {
        let d = self.depth();
        let mut out = Self::identity(d);
        for k in 0..d {
            if k + 1 < d {
                out.rows[k + 1][k] = -a.clone();
            }
            if k + 2 < d {
                out.rows[k + 2][k] = -b.clone();
            }
            for n in (k + 3)..d {
                out.rows[n][k] = -self.rows[n - 2][k].clone();
            }
        }
        out
    }

    /// One-band down-shift: I - a*S - S*(M - I). Column k reads 1, -a,
    /// then the negated strictly-lower entries of column k of M moved down
    /// one row.
    pub fn a_shift(&self, a: &BigInt) -> Self {
        let d = self.depth();
        let mut out = Self::identity(d);
        for k in 0..d {
            if k + 1 < d {
                out.rows[k + 1][k] = -a.clone();
            }
            for n in (k + 2)..d {
                out.rows[n][k] = -self.rows[n - 1][k].clone();
            }
        }
        out
    }

    /// Production matrix P = M^{-1} * (M with its first row removed).
    /// The result is a general (d-1) x (d-1) integer matrix.
    pub fn production_matrix(&self) -> Result<IntMatrix, TriangleError> {
        let d = self.depth();
        if d < 2 {
            return Err(TriangleError::DepthTooSmall(d, 2));
        }
        let inv = self.inverse();
        let rows = (0..d - 1)
            .map(|i| {
                (0..d - 1)
                    .map(|j| {
                        // M(k+1, j) vanishes for j > k+1, so start at j-1.
                        let lo = j.saturating_sub(1);
                        (lo..=i).map(|k| &inv.rows[i][k] * self.entry(k + 1, j)).sum()
                    })
                    .collect()
            })
            .collect();
        Ok(IntMatrix::from_rows(rows))
    }

    /// True iff the leading k x k principal submatrices agree.
    /// Requires k <= both depths.
    pub fn leading_agree(&self, other: &Self, k: usize) -> bool {
        assert!(k <= self.depth() && k <= other.depth(), "k exceeds a depth");
        (0..k).all(|n| self.rows[n] == other.rows[n])
    }

    /// Matrix-vector product against a sequence prefix; the input must
    /// cover every column.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert!(v.len() >= self.depth(), "vector shorter than depth");
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// JSON form: {"depth": d, "rows": [[...decimal strings...], ...]},
    /// lower triangle only.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth(),
            "rows": self.rows.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Dense rectangular integer matrix; the production-matrix return type and
/// the determinant-kernel input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        if let Some(first) = rows.first() {
            let w = first.len();
            assert!(rows.iter().all(|r| r.len() == w), "ragged matrix rows");
        }
        IntMatrix { rows }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Integrality gate for rational triangle entries produced by
/// generating-function constructions.
pub fn rational_rows_to_triangle(
    rows: Vec<Vec<BigRational>>,
) -> Result<UnitLowerTriangular, TriangleIntegralityError> {
    let mut int_rows = Vec::with_capacity(rows.len());
    for (n, row) in rows.into_iter().enumerate() {
        let mut int_row = Vec::with_capacity(row.len());
        for (k, v) in row.into_iter().enumerate() {
            if !v.is_integer() {
                return Err(TriangleIntegralityError::NonIntegralEntry(n, k));
            }
            int_row.push(v.to_integer());
        }
        int_rows.push(int_row);
    }
    UnitLowerTriangular::from_rows(int_rows).map_err(TriangleIntegralityError::Shape)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleIntegralityError {
    #[error("entry ({0},{1}) is not an integer")]
    NonIntegralEntry(usize, usize),
    #[error(transparent)]
    Shape(TriangleError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::binomial;

    fn binomial_triangle(depth: usize) -> UnitLowerTriangular {
        UnitLowerTriangular::from_rows(
            (0..depth)
                .map(|n| (0..=n).map(|k| binomial(n as i64, k as i64)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn multiply_by_identity() {
        let b = binomial_triangle(5);
        let i = UnitLowerTriangular::identity(5);
        assert_eq!(b.multiply(&i).unwrap(), b);
        assert_eq!(i.multiply(&b).unwrap(), b);
    }

    #[test]
    fn multiply_depth_mismatch() {
        let a = UnitLowerTriangular::identity(3);
        let b = UnitLowerTriangular::identity(4);
        assert_eq!(a.multiply(&b), Err(TriangleError::DepthMismatch(3, 4)));
    }

    #[test]
    fn binomial_squared_has_power_of_two_weights() {
        let b = binomial_triangle(3);
        let b2 = b.multiply(&b).unwrap();
        for n in 0..3i64 {
            for k in 0..=n {
                let expect = binomial(n, k) * BigInt::from(2).pow((n - k) as u32);
                assert_eq!(b2.entry(n as usize, k as usize), expect);
            }
        }
    }

    #[test]
    fn inverse_of_identity() {
        let i = UnitLowerTriangular::identity(4);
        assert_eq!(i.inverse(), i);
    }

    #[test]
    fn inverse_of_binomial_alternates_signs() {
        let b = binomial_triangle(5);
        let inv = b.inverse();
        for n in 0..5i64 {
            for k in 0..=n {
                let mut expect = binomial(n, k);
                if (n - k) % 2 == 1 {
                    expect = -expect;
                }
                assert_eq!(inv.entry(n as usize, k as usize), expect);
            }
        }
        assert_eq!(b.multiply(&inv).unwrap(), UnitLowerTriangular::identity(5));
    }

    #[test]
    fn inverse_is_involutive() {
        let m = UnitLowerTriangular::from_i64_rows(&[
            &[1],
            &[3, 1],
            &[-2, 7, 1],
            &[5, 0, -4, 1],
            &[9, -6, 2, 8, 1],
        ])
        .unwrap();
        assert_eq!(m.inverse().inverse(), m);
    }

    #[test]
    fn ab_shift_of_identity_with_zero_bands() {
        let i = UnitLowerTriangular::identity(6);
        assert_eq!(i.ab_shift(&BigInt::zero(), &BigInt::zero()), i);
    }

    #[test]
    fn ab_shift_first_column_layout() {
        let m = UnitLowerTriangular::from_i64_rows(&[
            &[1],
            &[21, 1],
            &[31, 32, 1],
            &[41, 42, 43, 1],
            &[51, 52, 53, 54, 1],
            &[61, 62, 63, 64, 65, 1],
        ])
        .unwrap();
        let t = m.ab_shift(&BigInt::from(7), &BigInt::from(9));
        let col0: Vec<BigInt> = (0..6).map(|n| t.entry(n, 0)).collect();
        let expect: Vec<BigInt> =
            [1, -7, -9, -21, -31, -41].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(col0, expect);
        // Interior column follows the same pattern.
        let col1: Vec<BigInt> = (1..6).map(|n| t.entry(n, 1)).collect();
        let expect1: Vec<BigInt> = [1, -7, -9, -32, -42].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(col1, expect1);
    }

    #[test]
    fn a_shift_first_column_layout() {
        let m = UnitLowerTriangular::from_i64_rows(&[
            &[1],
            &[21, 1],
            &[31, 32, 1],
            &[41, 42, 43, 1],
            &[51, 52, 53, 54, 1],
            &[61, 62, 63, 64, 65, 1],
        ])
        .unwrap();
        let t = m.a_shift(&BigInt::from(4));
        let col0: Vec<BigInt> = (0..6).map(|n| t.entry(n, 0)).collect();
        let expect: Vec<BigInt> =
            [1, -4, -21, -31, -41, -51].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(col0, expect);
    }

    #[test]
    fn a_shift_of_identity_with_zero_band() {
        let i = UnitLowerTriangular::identity(5);
        assert_eq!(i.a_shift(&BigInt::zero()), i);
    }

    #[test]
    fn production_matrix_of_identity_is_superdiagonal_shift() {
        let p = UnitLowerTriangular::identity(5).production_matrix().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if j == i + 1 { BigInt::one() } else { BigInt::zero() };
                assert_eq!(*p.entry(i, j), expect);
            }
        }
    }

    #[test]
    fn production_matrix_of_binomial_is_bidiagonal() {
        let p = binomial_triangle(6).production_matrix().unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if j == i || j == i + 1 { BigInt::one() } else { BigInt::zero() };
                assert_eq!(*p.entry(i, j), expect, "at ({},{})", i, j);
            }
        }
    }

    #[test]
    fn production_matrix_needs_depth_two() {
        let i = UnitLowerTriangular::identity(1);
        assert_eq!(i.production_matrix(), Err(TriangleError::DepthTooSmall(1, 2)));
    }

    #[test]
    fn leading_agree_basics() {
        let i = UnitLowerTriangular::identity(4);
        let b = binomial_triangle(4);
        assert!(i.leading_agree(&i, 4));
        assert!(i.leading_agree(&b, 1));
        assert!(!i.leading_agree(&b, 2));
    }

    #[test]
    fn from_rows_rejects_bad_shapes() {
        assert_eq!(
            UnitLowerTriangular::from_i64_rows(&[&[1], &[2, 2]]),
            Err(TriangleError::NonUnitDiagonal(1))
        );
        assert_eq!(
            UnitLowerTriangular::from_i64_rows(&[&[1], &[1, 1, 1]]),
            Err(TriangleError::RaggedRow(1, 3, 2))
        );
    }

    #[test]
    fn json_round_shape() {
        let b = binomial_triangle(3);
        assert_eq!(
            b.to_json(),
            serde_json::json!({
                "depth": 3,
                "rows": [["1"], ["1", "1"], ["1", "2", "1"]],
            })
        );
    }
}
