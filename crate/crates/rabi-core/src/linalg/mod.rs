//! Dense complex linear algebra: matrix arithmetic, Kronecker products, and a
//! deterministic Hermitian eigensolver.
//!
//! Matrices are dense, row-major `Complex64` with explicit dimensions. At the
//! problem sizes this crate targets (2N ≤ ~800 for Fock truncation N) dense
//! storage and O(n³) direct solves are cheap, reproducible, and free of
//! sparse-format bookkeeping.

mod eigen;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::math;

pub use eigen::{eigh, eigvalsh, lowest_eigenpairs, EigenDecomposition};

/// Relative tolerance for accepting a matrix as Hermitian:
/// `max |M[j][k] - conj(M[k][j])| <= HERMITIAN_REL_TOL * max |M|`.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

/// Eigenvector 2-norms returned by the solver lie within this distance of 1.
pub const EIGENVECTOR_NORM_TOL: f64 = 1e-10;

/// Residual bound for the eigensolver: `||M v - lambda v|| <= tol * ||M||_F`.
pub const EIGEN_RESIDUAL_REL_TOL: f64 = 1e-9;

/// Max-norm bound on `V^H V - I` for the returned eigenvector matrix.
pub const ORTHONORMALITY_TOL: f64 = 1e-9;

/// `lowest_eigenpairs` agrees with the leading eigenvalues of `eigh` to this.
pub const PARTIAL_EIGENVALUE_TOL: f64 = 1e-8;

/// Errors from the linear-algebra layer.
#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// Operand shapes are incompatible for the named operation.
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Hermitian input was required; reports the worst asymmetry found.
    NotHermitian { max_asymmetry: f64, tolerance: f64 },
    /// The QL iteration failed to converge for one eigenvalue.
    NoConvergence { eigenvalue_index: usize, iterations: usize },
    /// A Kronecker product would overflow the platform index type.
    IndexOverflow { lhs: (usize, usize), rhs: (usize, usize) },
    /// A NaN or infinity was found where finite data is required.
    NonFinite { context: String },
    /// A scalar argument was out of range (reported verbatim).
    InvalidArgument(String),
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { op, lhs, rhs } => write!(
                f,
                "{op}: dimension mismatch between {}x{} and {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            LinalgError::NotSquare { rows, cols } => {
                write!(f, "square matrix required, got {rows}x{cols}")
            }
            LinalgError::NotHermitian {
                max_asymmetry,
                tolerance,
            } => write!(
                f,
                "matrix is not Hermitian: max |M[j][k] - conj(M[k][j])| = {max_asymmetry:e} \
                 exceeds tolerance {tolerance:e}"
            ),
            LinalgError::NoConvergence {
                eigenvalue_index,
                iterations,
            } => write!(
                f,
                "eigensolver failed to converge for eigenvalue {eigenvalue_index} \
                 after {iterations} iterations"
            ),
            LinalgError::IndexOverflow { lhs, rhs } => write!(
                f,
                "kron of {}x{} and {}x{} overflows the index type",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            LinalgError::NonFinite { context } => {
                write!(f, "non-finite value in {context}")
            }
            LinalgError::InvalidArgument(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense complex matrix with row-major storage.
///
/// Stored data is always finite (constructors reject NaN/infinity), and
/// `data.len() == rows * cols` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from an entry function `f(row, col)`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::from_vec(rows, cols, data)
    }

    /// Build from a row-major vector of entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        if data.len() != rows * cols {
            return Err(LinalgError::InvalidArgument(format!(
                "data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(LinalgError::NonFinite {
                context: format!("matrix entry ({}, {})", k / cols, k % cols),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(diag: &[f64]) -> Result<Self, LinalgError> {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(LinalgError::NonFinite {
                    context: format!("diagonal entry {i}"),
                });
            }
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major view of the entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Column `k` as a vector.
    pub fn column(&self, k: usize) -> Vec<Complex64> {
        assert!(k < self.cols, "column index out of range");
        (0..self.rows)
            .map(|r| self.data[r * self.cols + k])
            .collect()
    }

    /// Entrywise sum; shapes must match.
    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape("add", other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise difference; shapes must match.
    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape("sub", other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Real scalar multiple.
    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "matmul",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut data = vec![Complex64::new(0.0, 0.0); m * n];
        // i-k-j loop order keeps the inner traversal contiguous in both
        // `other` and the output.
        for i in 0..m {
            let out_row = &mut data[i * n..(i + 1) * n];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[p * n..(p + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(ComplexMatrix {
            rows: m,
            cols: n,
            data,
        })
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "mul_vec",
                lhs: (self.rows, self.cols),
                rhs: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(v).map(|(a, x)| a * x).sum()
            })
            .collect())
    }

    /// Kronecker product `self ⊗ other`; block (j, k) equals
    /// `self[j][k] * other`.
    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        let rows = self.rows.checked_mul(other.rows);
        let cols = self.cols.checked_mul(other.cols);
        let (rows, cols) = match (rows, cols) {
            (Some(r), Some(c)) if r.checked_mul(c).is_some() => (r, c),
            _ => {
                return Err(LinalgError::IndexOverflow {
                    lhs: (self.rows, self.cols),
                    rhs: (other.rows, other.cols),
                })
            }
        };
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        for ja in 0..self.rows {
            for ka in 0..self.cols {
                let a = self.data[ja * self.cols + ka];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for jb in 0..other.rows {
                    let dst = (ja * other.rows + jb) * cols + ka * other.cols;
                    let src = jb * other.cols;
                    for kb in 0..other.cols {
                        data[dst + kb] = a * other.data[src + kb];
                    }
                }
            }
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `other` (both shapes must match).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Worst Hermitian asymmetry `max |M[j][k] - conj(M[k][j])|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        debug_assert!(self.is_square());
        let n = self.rows;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                let delta = (self.data[j * n + k] - self.data[k * n + j].conj()).norm();
                worst = worst.max(delta);
            }
        }
        worst
    }

    /// Whether the matrix is Hermitian within [`HERMITIAN_REL_TOL`].
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermitian_asymmetry() <= HERMITIAN_REL_TOL * self.max_abs()
    }

    pub(crate) fn check_hermitian(&self) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let tolerance = HERMITIAN_REL_TOL * self.max_abs();
        let max_asymmetry = self.hermitian_asymmetry();
        if max_asymmetry > tolerance {
            return Err(LinalgError::NotHermitian {
                max_asymmetry,
                tolerance,
            });
        }
        Ok(())
    }

    fn check_same_shape(&self, op: &'static str, other: &Self) -> Result<(), LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                op,
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.data[r * self.cols + c]
    }
}
