//! State preparation, post-selected measurement, and Born statistics.
//!
//! Preparation matrices and measurement covectors share one layout: the
//! row-major coefficients of an `NxN` matrix, read as amplitudes over a
//! doubled register whose basis label is the pair `(row, column)`. States
//! built this way are deliberately left unnormalized; probabilities are
//! always computed against normalized operands.

use num_complex::Complex;
use thiserror::Error;

use crate::linalg::{Bra, ComplexMatrix, Ket, LinalgError};
use crate::scalar::Scalar;

/// Errors from state construction and measurement.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("prepared state label must not be empty")]
    EmptyLabel,
    #[error("qubit count must be at least one")]
    NoQubits,
    #[error("measurement covers {measured} qubits, state has only {available}")]
    MeasuredTooMany { measured: usize, available: usize },
    #[error("state has zero norm")]
    ZeroState,
    #[error("measurement covector has zero norm")]
    ZeroMeasurement,
    #[error("basis is empty")]
    EmptyBasis,
    #[error("basis state {index} covers {found} qubits, expected {expected}")]
    MixedBasisSizes {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("basis has {found} states, a complete basis needs {expected}")]
    BasisCount { expected: usize, found: usize },
    #[error("basis states {i} and {j} overlap with magnitude {overlap:.3e}")]
    BasisNotOrthogonal { i: usize, j: usize, overlap: f64 },
    #[error("basis does not resolve the identity, largest deviation {max_deviation:.3e}")]
    BasisIncomplete { max_deviation: f64 },
    #[error("state covers {found} qubits, expected {expected}")]
    WrongQubitCount { expected: usize, found: usize },
}

/// A named, possibly unnormalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedState<S: Scalar> {
    label: String,
    ket: Ket<S>,
}

impl<S: Scalar> PreparedState<S> {
    pub fn new(label: impl Into<String>, ket: Ket<S>) -> Result<Self, StateError> {
        let label = label.into();
        if label.is_empty() {
            return Err(StateError::EmptyLabel);
        }
        Ok(Self { label, ket })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ket(&self) -> &Ket<S> {
        &self.ket
    }

    pub fn into_ket(self) -> Ket<S> {
        self.ket
    }
}

/// A measurement covector together with the matrix it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementState<S: Scalar> {
    bra: Bra<S>,
    source: ComplexMatrix<S>,
}

impl<S: Scalar> MeasurementState<S> {
    pub fn bra(&self) -> &Bra<S> {
        &self.bra
    }

    pub fn source(&self) -> &ComplexMatrix<S> {
        &self.source
    }

    /// Qubits consumed when this measurement is applied.
    pub fn measured_qubits(&self) -> usize {
        self.bra.num_qubits()
    }
}

/// Outcome of projecting a measured prefix out of a register.
#[derive(Debug, Clone, PartialEq)]
pub struct PostSelectionResult<S: Scalar> {
    /// State of the unmeasured qubits, not normalized.
    pub raw_residual: Ket<S>,
    /// Unit-norm residual, absent when the measurement annihilates the state.
    pub normalized_residual: Option<Ket<S>>,
    /// Scalar value when every qubit was measured.
    pub amplitude: Option<Complex<S>>,
    /// Born probability of this outcome for normalized operands.
    pub success_probability: S,
}

/// Unnormalized maximally correlated pair of `n`-qubit registers:
/// `sum_a |a>|a>` over all `2^n` basis labels. Its squared norm is `2^n`.
pub fn delta_state<S: Scalar>(num_qubits: usize) -> Result<PreparedState<S>, StateError> {
    if num_qubits == 0 {
        return Err(StateError::NoQubits);
    }
    let matrix = ComplexMatrix::identity(1 << num_qubits)?;
    let ket = Ket::from_amplitudes(matrix.entries().to_vec())?;
    PreparedState::new("delta", ket)
}

/// State with amplitude `m[a][b]` on the basis pair `(a, b)`.
///
/// The matrix must be square with a power-of-two side `2^n`; the ket then
/// spans `2n` qubits. For a 2x2 matrix this is the familiar two-qubit state
/// `sum_ab m[a][b] |ab>`.
pub fn cup_state_from_matrix<S: Scalar>(
    m: &ComplexMatrix<S>,
) -> Result<PreparedState<S>, StateError> {
    if !m.is_square() {
        return Err(StateError::Linalg(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }));
    }
    if !m.rows().is_power_of_two() {
        return Err(StateError::Linalg(LinalgError::NotPowerOfTwo {
            len: m.rows(),
        }));
    }
    let ket = Ket::from_amplitudes(m.entries().to_vec())?;
    PreparedState::new("cup", ket)
}

/// Measurement covector with coefficient `m[a][b]` on the basis pair `(a, b)`.
///
/// The matrix must be square with a power-of-two side `2^n`; the covector
/// then spans `2n` qubits.
pub fn measurement_state_from_matrix<S: Scalar>(
    m: &ComplexMatrix<S>,
) -> Result<MeasurementState<S>, StateError> {
    if !m.is_square() {
        return Err(StateError::Linalg(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }));
    }
    if !m.rows().is_power_of_two() {
        return Err(StateError::Linalg(LinalgError::NotPowerOfTwo {
            len: m.rows(),
        }));
    }
    let bra = Bra::from_coefficients(m.entries().to_vec())?;
    Ok(MeasurementState {
        bra,
        source: m.clone(),
    })
}

/// Contracts the leading coefficients of a covector against the leading
/// qubits of a register: `out[j] = sum_i c[i] psi[i * tail + j]`.
fn partial_pair<S: Scalar>(coeffs: &[Complex<S>], state: &Ket<S>) -> Vec<Complex<S>> {
    let tail = state.len() / coeffs.len();
    let amps = state.amplitudes();
    let mut out = vec![Complex::new(S::zero(), S::zero()); tail];
    for (i, c) in coeffs.iter().enumerate() {
        if c.re == S::zero() && c.im == S::zero() {
            continue;
        }
        let block = &amps[i * tail..(i + 1) * tail];
        for (o, psi) in out.iter_mut().zip(block) {
            *o = *o + c * psi;
        }
    }
    out
}

/// Applies a measurement covector to the leading qubits of a register.
///
/// The raw residual keeps the scale of the inputs. The success probability
/// is the Born value for normalized operands:
/// `|raw|^2 / (|bra|^2 * |state|^2)`.
pub fn post_select<S: Scalar>(
    measurement: &MeasurementState<S>,
    state: &Ket<S>,
) -> Result<PostSelectionResult<S>, StateError> {
    let measured = measurement.measured_qubits();
    let available = state.num_qubits();
    if measured > available {
        return Err(StateError::MeasuredTooMany {
            measured,
            available,
        });
    }
    let bra_norm_sqr = measurement.bra().norm_sqr();
    if bra_norm_sqr <= S::zero() {
        return Err(StateError::ZeroMeasurement);
    }
    let state_norm_sqr = state.norm_sqr();
    if state_norm_sqr <= S::zero() {
        return Err(StateError::ZeroState);
    }
    let raw = partial_pair(measurement.bra().coefficients(), state);
    let raw_residual = Ket::from_amplitudes(raw)?;
    let success_probability = raw_residual.norm_sqr() / (bra_norm_sqr * state_norm_sqr);
    let normalized_residual = raw_residual.normalized().ok();
    let amplitude = if measured == available {
        Some(raw_residual.amplitude(0))
    } else {
        None
    };
    Ok(PostSelectionResult {
        raw_residual,
        normalized_residual,
        amplitude,
        success_probability,
    })
}

/// Born probabilities of a measurement basis applied to the leading qubits
/// of a register.
///
/// The basis covectors are normalized first, then checked for pairwise
/// orthogonality and for resolving the identity; both checks use the scalar
/// type's basis tolerance. The returned probabilities sum to one up to
/// rounding because the checks force the basis to be complete.
pub fn born_distribution<S: Scalar>(basis: &[Bra<S>], state: &Ket<S>) -> Result<Vec<S>, StateError> {
    if basis.is_empty() {
        return Err(StateError::EmptyBasis);
    }
    let measured = basis[0].num_qubits();
    for (index, bra) in basis.iter().enumerate() {
        if bra.num_qubits() != measured {
            return Err(StateError::MixedBasisSizes {
                index,
                expected: measured,
                found: bra.num_qubits(),
            });
        }
    }
    if measured > state.num_qubits() {
        return Err(StateError::MeasuredTooMany {
            measured,
            available: state.num_qubits(),
        });
    }
    let dim = 1 << measured;
    if basis.len() != dim {
        return Err(StateError::BasisCount {
            expected: dim,
            found: basis.len(),
        });
    }
    let normalized: Vec<Bra<S>> = basis
        .iter()
        .map(|bra| bra.normalized().map_err(|_| StateError::ZeroMeasurement))
        .collect::<Result<_, _>>()?;
    for i in 0..normalized.len() {
        for j in (i + 1)..normalized.len() {
            let overlap = normalized[i].overlap(&normalized[j])?.norm();
            if overlap > S::BASIS_TOL {
                return Err(StateError::BasisNotOrthogonal {
                    i,
                    j,
                    overlap: overlap.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }
    let mut gram = vec![Complex::new(S::zero(), S::zero()); dim * dim];
    for bra in &normalized {
        let coeffs = bra.coefficients();
        for a in 0..dim {
            let left = coeffs[a].conj();
            for b in 0..dim {
                gram[a * dim + b] = gram[a * dim + b] + left * coeffs[b];
            }
        }
    }
    let mut max_deviation = S::zero();
    for a in 0..dim {
        for b in 0..dim {
            let expected = if a == b { S::one() } else { S::zero() };
            let deviation = (gram[a * dim + b] - Complex::new(expected, S::zero())).norm();
            max_deviation = max_deviation.max(deviation);
        }
    }
    if max_deviation > S::BASIS_TOL {
        return Err(StateError::BasisIncomplete {
            max_deviation: max_deviation.to_f64().unwrap_or(f64::NAN),
        });
    }
    let unit_state = state.normalized().map_err(|_| StateError::ZeroState)?;
    let probabilities = normalized
        .iter()
        .map(|bra| {
            Ket::from_amplitudes(partial_pair(bra.coefficients(), &unit_state))
                .map(|residual| residual.norm_sqr())
                .map_err(StateError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(probabilities)
}

/// Whether a two-qubit state cannot be written as a tensor product.
///
/// Reads the amplitudes as a `2x2` matrix; the state is a product exactly
/// when that matrix has rank one, so entanglement is a determinant that is
/// large relative to the squared norm.
pub fn is_entangled_two_qubit<S: Scalar>(state: &Ket<S>, tol: S) -> Result<bool, StateError> {
    if state.num_qubits() != 2 {
        return Err(StateError::WrongQubitCount {
            expected: 2,
            found: state.num_qubits(),
        });
    }
    let norm_sqr = state.norm_sqr();
    if norm_sqr <= S::zero() {
        return Err(StateError::ZeroState);
    }
    let amps = state.amplitudes();
    let det = amps[0] * amps[3] - amps[1] * amps[2];
    Ok(det.norm() > tol * norm_sqr)
}

/// Whether two states agree up to one global complex phase.
pub fn phase_equal<S: Scalar>(a: &Ket<S>, b: &Ket<S>, tol: S) -> Result<bool, StateError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(StateError::Linalg(LinalgError::QubitMismatch {
            expected: a.num_qubits(),
            found: b.num_qubits(),
        }));
    }
    let a_unit = a.normalized().map_err(|_| StateError::ZeroState)?;
    let b_unit = b.normalized().map_err(|_| StateError::ZeroState)?;
    Ok(a_unit.inner(&b_unit)?.norm() >= S::one() - tol)
}
