//! Simulation of measurement-based state and gate transfer on planar wire
//! diagrams, plus a Monte Carlo estimator for the trace modulus of a unitary.
//!
//! The crate is organized bottom up:
//!
//! - [`linalg`]: dense complex matrices and qubit-register vectors.
//! - [`diagram`]: stacked slices of identity wires, cups, and caps.
//! - [`states`]: preparation from coefficient matrices, post-selected
//!   measurement, and Born statistics.
//! - [`teleport`]: measurement bases indexed by Pauli words and seeded
//!   single-run teleportation of a gate.
//! - [`trace`]: the contraction identity turning a trace into an amplitude,
//!   and a Bernoulli estimator built on it.
//! - [`io`]: JSON wire formats, concrete in `f64`.
//! - [`random`]: seeded generators for matrices, states, and unitaries.
//!
//! Everything numeric is generic over the real scalar through [`Scalar`];
//! the `*64` and `*32` aliases below fix the two supported precisions.

pub mod diagram;
pub mod io;
pub mod linalg;
pub mod random;
pub mod scalar;
pub mod states;
pub mod teleport;
pub mod trace;

pub use num_complex::{Complex, Complex32, Complex64};

pub use linalg::{Bra, ComplexMatrix, Ket, LinalgError};
pub use scalar::Scalar;

/// Double-precision matrix.
pub type Matrix64 = ComplexMatrix<f64>;
/// Single-precision matrix.
pub type Matrix32 = ComplexMatrix<f32>;
/// Double-precision state vector.
pub type Ket64 = Ket<f64>;
/// Single-precision state vector.
pub type Ket32 = Ket<f32>;
/// Double-precision covector.
pub type Bra64 = Bra<f64>;
/// Single-precision covector.
pub type Bra32 = Bra<f32>;
/// Double-precision diagram.
pub type Diagram64 = diagram::Diagram<f64>;
/// Single-precision diagram.
pub type Diagram32 = diagram::Diagram<f32>;
