use num_complex::Complex;
use num_traits::{One, Zero};

use super::{LinalgError, MAX_KRON_SIDE};
use crate::scalar::{real, Scalar};

use super::state::Ket;

/// Dense complex matrix in row-major storage.
///
/// Every constructor rejects empty shapes and non-finite entries, so any
/// value handed out by this type holds finite data. Operations that can fail
/// on shapes or sizes return `Result` instead of panicking.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<S>>,
}

fn check_finite<S: Scalar>(entries: &[Complex<S>]) -> Result<(), LinalgError> {
    for (index, z) in entries.iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
    }
    Ok(())
}

impl<S: Scalar> ComplexMatrix<S> {
    /// Builds a `rows x cols` matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex<S>>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyShape { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                len: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix with real entries given as `f64` values.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, LinalgError> {
        let entries = entries
            .iter()
            .map(|&x| Complex::new(real::<S>(x), S::zero()))
            .collect();
        Self::new(rows, cols, entries)
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyShape { rows, cols });
        }
        Ok(Self {
            rows,
            cols,
            entries: vec![Complex::zero(); rows * cols],
        })
    }

    /// Identity matrix of side `n`.
    pub fn identity(n: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = Complex::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex<S>] {
        &self.entries
    }

    /// Entry at `(row, col)`. Panics when the position is out of range.
    pub fn get(&self, row: usize, col: usize) -> Complex<S> {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.entries[row * self.cols + col]
    }

    fn idx(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    /// Multiplies every entry by a complex factor.
    pub fn scale(&self, factor: Complex<S>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![Complex::zero(); self.entries.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.entries[self.idx(r, c)];
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "matmul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut entries = vec![Complex::<S>::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[self.idx(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &other.entries[k * other.cols..(k + 1) * other.cols];
                let out = &mut entries[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out.iter_mut().zip(row) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Kronecker product `self (x) other`, capped at side `MAX_KRON_SIDE`.
    ///
    /// The index convention places the left factor in the high-order bits:
    /// entry `((i1, i2), (j1, j2))` of the product sits at row
    /// `i1 * other.rows + i2` and column `j1 * other.cols + j2`.
    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        self.kron_capped(other, MAX_KRON_SIDE)
    }

    /// Kronecker product with an explicit side limit.
    pub fn kron_capped(&self, other: &Self, max_side: usize) -> Result<Self, LinalgError> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let side = rows.max(cols);
        if side > max_side {
            return Err(LinalgError::SizeLimit {
                requested: side,
                limit: max_side,
            });
        }
        let mut entries = vec![Complex::zero(); rows * cols];
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.entries[self.idx(i1, j1)];
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.entries[other.idx(i2, j2)];
                        entries[(i1 * other.rows + i2) * cols + (j1 * other.cols + j2)] = a * b;
                    }
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Sum of the diagonal. Errors on non-square input.
    pub fn trace(&self) -> Result<Complex<S>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut sum = Complex::zero();
        for i in 0..self.rows {
            sum = sum + self.entries[self.idx(i, i)];
        }
        Ok(sum)
    }

    /// Largest entrywise absolute difference. Errors on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> Result<S, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch {
                op: "max_abs_diff",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut max = S::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            max = max.max((a - b).norm());
        }
        Ok(max)
    }

    /// Entrywise comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: S) -> Result<bool, LinalgError> {
        Ok(self.max_abs_diff(other)? <= tol)
    }

    /// Sum of squared entry moduli.
    pub fn frobenius_norm_sqr(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Largest deviation of `dagger(self) * self` from the identity.
    pub fn unitarity_deviation(&self) -> Result<S, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let gram = self.dagger().matmul(self)?;
        gram.max_abs_diff(&Self::identity(self.rows)?)
    }

    /// Whether the matrix is unitary within an absolute tolerance.
    /// Non-square matrices are never unitary.
    pub fn is_unitary(&self, tol: S) -> bool {
        match self.unitarity_deviation() {
            Ok(dev) => dev <= tol,
            Err(_) => false,
        }
    }

    /// Determinant of a `2x2` matrix.
    pub fn det_2x2(&self) -> Result<Complex<S>, LinalgError> {
        if self.shape() != (2, 2) {
            return Err(LinalgError::WrongShape {
                rows: self.rows,
                cols: self.cols,
                expected_rows: 2,
                expected_cols: 2,
            });
        }
        Ok(self.entries[0] * self.entries[3] - self.entries[1] * self.entries[2])
    }

    /// Inverse of a `2x2` matrix. Errors when the determinant is too small
    /// relative to the entries to invert reliably.
    pub fn inverse_2x2(&self) -> Result<Self, LinalgError> {
        let det = self.det_2x2()?;
        let scale = self.frobenius_norm_sqr().max(S::one());
        if det.norm() <= S::epsilon() * scale {
            return Err(LinalgError::Singular);
        }
        let inv_det: Complex<S> = Complex::<S>::one() / det;
        let entries = vec![
            self.entries[3] * inv_det,
            -self.entries[1] * inv_det,
            -self.entries[2] * inv_det,
            self.entries[0] * inv_det,
        ];
        Self::new(2, 2, entries)
    }

    /// Applies the matrix to a state vector, returning a new state.
    ///
    /// The column count must match the state length and the row count must be
    /// a power of two so the result is again a qubit register.
    pub fn apply(&self, ket: &Ket<S>) -> Result<Ket<S>, LinalgError> {
        if self.cols != ket.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "apply",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: ket.len(),
                right_cols: 1,
            });
        }
        let amps = ket.amplitudes();
        let mut out = vec![Complex::<S>::zero(); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            let mut sum = Complex::zero();
            for (a, x) in row.iter().zip(amps) {
                sum = sum + a * x;
            }
            *slot = sum;
        }
        Ket::from_amplitudes(out)
    }
}
