//! Dense complex matrices and qubit-register state vectors.

mod matrix;
mod state;

use thiserror::Error;

pub use matrix::ComplexMatrix;
pub use state::{Bra, Ket};

/// Largest side length a Kronecker product may produce by default.
pub const MAX_KRON_SIDE: usize = 1 << 12;

/// Largest amplitude count a state vector may hold.
pub const MAX_STATE_AMPLITUDES: usize = 1 << 24;

/// Errors raised by matrix and state-vector operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix shape {rows}x{cols} has no entries")]
    EmptyShape { rows: usize, cols: usize },
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    EntryCount { rows: usize, cols: usize, len: usize },
    #[error("non-finite value at flat index {index}")]
    NonFinite { index: usize },
    #[error("{op}: left operand is {left_rows}x{left_cols}, right operand is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    WrongShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("requested size {requested} exceeds the limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("operand has {found} qubits, expected {expected}")]
    QubitMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for {qubits} qubits")]
    BasisIndex { index: usize, qubits: usize },
}
