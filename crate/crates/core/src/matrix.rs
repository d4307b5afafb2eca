//! Dense complex matrices and the norms used throughout the crate.
//!
//! Matrices are `nalgebra` dynamic matrices over `Complex<f64>`. The JSON
//! wire format is row-major with each entry encoded as an `[re, im]` pair.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Complex64 = num_complex::Complex<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix has no entries")]
    Empty,
    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("data length {got} does not match rows*cols = {expected}")]
    BadDataLength { got: usize, expected: usize },
    #[error("rows and cols must be positive")]
    BadShape,
}

pub fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Build a matrix from row-major real entries (tests and fixtures).
pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
    assert_eq!(data.len(), rows * cols);
    ComplexMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| real(x)))
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Fail on empty shapes or NaN/Inf entries.
pub fn validate_finite(m: &ComplexMatrix) -> Result<(), MatrixError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(MatrixError::Empty);
    }
    for col in 0..m.ncols() {
        for row in 0..m.nrows() {
            let z = m[(row, col)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MatrixError::NonFinite { row, col });
            }
        }
    }
    Ok(())
}

pub fn require_square(m: &ComplexMatrix) -> Result<usize, MatrixError> {
    if m.nrows() != m.ncols() {
        return Err(MatrixError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Operator norm (largest singular value). Zero for degenerate shapes.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values()[0]
}

/// `||a - b||` in operator norm.
pub fn operator_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    operator_norm(&(a - b))
}

pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    m.nrows() == m.ncols() && operator_distance(m, &m.adjoint()) <= tol
}

/// Symmetrize a numerically Hermitian matrix so eigensolvers see an exact one.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * real(0.5)
}

/// Matrix JSON wire format: `{"rows": r, "cols": c, "data": [[re, im], ...]}`
/// with `data` in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for row in 0..m.nrows() {
            for col in 0..m.ncols() {
                let z = m[(row, col)];
                data.push([z.re, z.im]);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, MatrixError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(MatrixError::BadShape);
        }
        if self.data.len() != self.rows * self.cols {
            return Err(MatrixError::BadDataLength {
                got: self.data.len(),
                expected: self.rows * self.cols,
            });
        }
        let m = ComplexMatrix::from_row_iterator(
            self.rows,
            self.cols,
            self.data.iter().map(|&[re, im]| complex(re, im)),
        );
        validate_finite(&m)?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_norm_diag() {
        let m = from_real_rows(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        assert!((operator_norm(&m) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn operator_norm_rank_one() {
        // ½[[1,1],[0,0]] has singular values {1/√2, 0}
        let m = from_real_rows(2, 2, &[0.5, 0.5, 0.0, 0.0]);
        assert!((operator_norm(&m) - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn validate_rejects_nan() {
        let mut m = identity(2);
        m[(0, 1)] = complex(f64::NAN, 0.0);
        assert!(matches!(
            validate_finite(&m),
            Err(MatrixError::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = ComplexMatrix::from_row_slice(
            2,
            3,
            &[
                complex(1.0, 2.0),
                complex(0.0, -1.0),
                complex(0.5, 0.0),
                complex(-2.0, 0.25),
                complex(0.0, 0.0),
                complex(3.0, -3.0),
            ],
        );
        let j = MatrixJson::from_matrix(&m);
        let back = j.to_matrix().unwrap();
        assert_eq!(m, back);
        // row-major layout: data[1] is entry (0, 1)
        assert_eq!(j.data[1], [0.0, -1.0]);
    }

    #[test]
    fn json_rejects_bad_length() {
        let j = MatrixJson {
            rows: 2,
            cols: 2,
            data: vec![[1.0, 0.0]; 3],
        };
        assert!(matches!(
            j.to_matrix(),
            Err(MatrixError::BadDataLength { got: 3, expected: 4 })
        ));
    }
}
