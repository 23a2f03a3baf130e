//! Small dense symmetric linear algebra: a Jacobi eigensolver used as the
//! independent oracle, a Cholesky inverse, power iteration for Perron pairs
//! and rank-one downdates.

mod cholesky;
mod jacobi;
mod perron;

use std::fmt;

pub use cholesky::spd_inverse;
pub use jacobi::{jacobi_eigen, EigenDecomposition};
pub use perron::{perron, Perron};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("NoConvergence: {method} did not converge within {limit} {unit}")]
    NoConvergence {
        method: &'static str,
        limit: usize,
        unit: &'static str,
    },
    #[error("NotPositiveDefinite: pivot {pivot:e} at row {row}")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("NotPositiveMatrix: entry ({row}, {col}) = {value:e} is not strictly positive")]
    NotPositiveMatrix { row: usize, col: usize, value: f64 },
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("NotSymmetric: entries ({row}, {col}) and ({col}, {row}) differ")]
    NotSymmetric { row: usize, col: usize },
    #[error("NonFinite: entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("IllConditioned: inverse residual {residual:e} exceeds {limit:e}")]
    IllConditioned { residual: f64, limit: f64 },
    #[error("EmptyMatrix: order must be at least 1")]
    EmptyMatrix,
}

/// Dense symmetric matrix, row-major. Symmetry is exact: constructors only
/// evaluate the upper triangle and mirror it.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds the matrix from `f(i, j)` evaluated for `i ≤ j` only.
    ///
    /// # Panics
    ///
    /// If `f` yields a non-finite value.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                assert!(v.is_finite(), "entry ({i}, {j}) is not finite");
                m.data[i * order + j] = v;
                m.data[j * order + i] = v;
            }
        }
        m
    }

    /// Validating constructor from explicit rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let order = rows.len();
        for r in rows {
            if r.len() != order {
                return Err(LinalgError::DimensionMismatch {
                    expected: order,
                    found: r.len(),
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(LinalgError::NonFinite { row: i, col: j });
                }
                if x != rows[j][i] {
                    return Err(LinalgError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self::from_fn(order, |i, j| rows[i][j]))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.order.max(1)).take(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.order, "dimension mismatch");
        self.rows()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Principal submatrix on the given (row = column) indices, in that order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Dense product `self · other` as rows (not symmetric in general).
    pub fn matmul(&self, other: &Self) -> Vec<Vec<f64>> {
        let m = self.order;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| self.get(i, k) * other.get(k, j)).sum())
                    .collect()
            })
            .collect()
    }

    /// `D A D` for the diagonal matrix `D = diag(scale)`.
    pub fn scale_sym(&self, scale: &[f64]) -> Self {
        assert_eq!(scale.len(), self.order, "dimension mismatch");
        Self::from_fn(self.order, |i, j| scale[i] * self.get(i, j) * scale[j])
    }
}

/// `A − c·wwᵀ`.
pub fn rank_one_downdate(a: &SymMatrix, c: f64, w: &[f64]) -> Result<SymMatrix, LinalgError> {
    if w.len() != a.order() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.order(),
            found: w.len(),
        });
    }
    Ok(SymMatrix::from_fn(a.order(), |i, j| {
        a.get(i, j) - c * w[i] * w[j]
    }))
}
