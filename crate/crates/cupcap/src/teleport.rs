//! Gate teleportation over a measurement basis indexed by Pauli words.
//!
//! The sender holds an `n`-qubit state and half of an unnormalized
//! maximally correlated pair. Measuring the sender's `2n` qubits in the
//! basis derived from a gate `u` collapses the receiver's half onto the
//! gated input up to one of `4^n` Pauli word corrections; the measured word
//! is the classical message. The sign convention used here makes the `y`
//! label real: `y = [[0, 1], [-1, 0]]`.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{Bra, ComplexMatrix, Ket, LinalgError};
use crate::scalar::Scalar;
use crate::states::{
    born_distribution, delta_state, measurement_state_from_matrix, phase_equal, post_select,
    MeasurementState, StateError,
};

/// Errors from basis construction and teleportation runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TeleportError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("gate is not unitary, largest deviation {max_deviation:.3e}")]
    NotUnitary { max_deviation: f64 },
    #[error("gate side {side} does not act on {qubits} qubits")]
    GateSize { side: usize, qubits: usize },
    #[error("a Pauli word needs at least one label")]
    EmptyWord,
    #[error("corrected receiver state does not match the gated input")]
    CorrectionMismatch,
}

/// One of the four single-qubit measurement labels.
///
/// Two classical bits name a label; the matrices multiply as the group the
/// protocol needs: all entries are real, `x`, `y`, `z` square to `1`, `1`,
/// `-1` times the identity, and each is its own inverse up to that sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    /// Labels in bit order `00, 01, 10, 11`.
    pub const ALL: [PauliLabel; 4] = [
        PauliLabel::I,
        PauliLabel::X,
        PauliLabel::Y,
        PauliLabel::Z,
    ];

    /// The two classical bits naming this label.
    pub fn bits(self) -> [u8; 2] {
        match self {
            PauliLabel::I => [0, 0],
            PauliLabel::X => [0, 1],
            PauliLabel::Y => [1, 0],
            PauliLabel::Z => [1, 1],
        }
    }

    pub fn from_bits(first: u8, second: u8) -> Option<Self> {
        match (first, second) {
            (0, 0) => Some(PauliLabel::I),
            (0, 1) => Some(PauliLabel::X),
            (1, 0) => Some(PauliLabel::Y),
            (1, 1) => Some(PauliLabel::Z),
            _ => None,
        }
    }

    /// Position in `ALL`, equal to the bits read as a base-two number.
    pub fn index(self) -> usize {
        let [a, b] = self.bits();
        (a as usize) * 2 + b as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        PauliLabel::ALL.get(index).copied()
    }

    /// The bits as a two-character string, `"00"` through `"11"`.
    pub fn code(self) -> &'static str {
        match self {
            PauliLabel::I => "00",
            PauliLabel::X => "01",
            PauliLabel::Y => "10",
            PauliLabel::Z => "11",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "00" => Some(PauliLabel::I),
            "01" => Some(PauliLabel::X),
            "10" => Some(PauliLabel::Y),
            "11" => Some(PauliLabel::Z),
            _ => None,
        }
    }
}

/// The `2x2` matrix of a single label.
pub fn pauli<S: Scalar>(label: PauliLabel) -> ComplexMatrix<S> {
    let entries: &[f64] = match label {
        PauliLabel::I => &[1.0, 0.0, 0.0, 1.0],
        PauliLabel::X => &[0.0, 1.0, 1.0, 0.0],
        PauliLabel::Y => &[0.0, 1.0, -1.0, 0.0],
        PauliLabel::Z => &[1.0, 0.0, 0.0, -1.0],
    };
    ComplexMatrix::from_real(2, 2, entries).expect("label matrices are fixed 2x2 data")
}

/// Kronecker product of label matrices, first label in the high-order bits.
pub fn pauli_word<S: Scalar>(labels: &[PauliLabel]) -> Result<ComplexMatrix<S>, TeleportError> {
    let (first, rest) = labels.split_first().ok_or(TeleportError::EmptyWord)?;
    let mut word = pauli::<S>(*first);
    for label in rest {
        word = word.kron(&pauli(*label))?;
    }
    Ok(word)
}

/// Whether a `2x2` matrix is a nonzero complex multiple of a unitary.
///
/// Writes the candidate scale as half the squared Frobenius norm and checks
/// both the Gram matrix and the determinant modulus against it, each within
/// `tol` relative to the scale.
pub fn is_scaled_special_unitary<S: Scalar>(
    m: &ComplexMatrix<S>,
    tol: S,
) -> Result<bool, TeleportError> {
    let det = m.det_2x2()?;
    let scale = m.frobenius_norm_sqr() / (S::one() + S::one());
    if scale <= S::zero() {
        return Ok(false);
    }
    let gram = m.dagger().matmul(m)?;
    let scaled_identity = ComplexMatrix::identity(2)?.scale(Complex::new(scale, S::zero()));
    let gram_ok = gram.max_abs_diff(&scaled_identity)? <= tol * scale;
    let det_ok = (det.norm() - scale).abs() <= tol * scale;
    Ok(gram_ok && det_ok)
}

/// Every length-`n` word in lexicographic order, first label most significant.
fn all_words(num_qubits: usize) -> Vec<Vec<PauliLabel>> {
    let count = 1usize << (2 * num_qubits);
    (0..count)
        .map(|index| {
            (0..num_qubits)
                .map(|q| {
                    let shift = 2 * (num_qubits - 1 - q);
                    PauliLabel::from_index((index >> shift) & 3).expect("two-bit index")
                })
                .collect()
        })
        .collect()
}

/// Measurement basis that teleports the gate `u` across the correlated pair.
///
/// For each Pauli word the coefficient matrix is `transpose(u) * word`. The
/// `4^n` states are returned in lexicographic word order and are verified to
/// be pairwise orthogonal. The gate must be unitary.
pub fn measurement_basis_for<S: Scalar>(
    u: &ComplexMatrix<S>,
) -> Result<Vec<MeasurementState<S>>, TeleportError> {
    let num_qubits = gate_qubits(u)?;
    let u_t = u.transpose();
    let basis = all_words(num_qubits)
        .iter()
        .map(|word| {
            let coeffs = u_t.matmul(&pauli_word(word)?)?;
            Ok(measurement_state_from_matrix(&coeffs)?)
        })
        .collect::<Result<Vec<_>, TeleportError>>()?;
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let overlap = basis[i]
                .bra()
                .normalized()?
                .overlap(&basis[j].bra().normalized()?)?
                .norm();
            if overlap > S::BASIS_TOL {
                return Err(TeleportError::State(StateError::BasisNotOrthogonal {
                    i,
                    j,
                    overlap: overlap.to_f64().unwrap_or(f64::NAN),
                }));
            }
        }
    }
    Ok(basis)
}

/// Validates a gate and returns the qubit count it acts on.
fn gate_qubits<S: Scalar>(u: &ComplexMatrix<S>) -> Result<usize, TeleportError> {
    if !u.is_square() {
        return Err(TeleportError::Linalg(LinalgError::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        }));
    }
    let side = u.rows();
    if side < 2 || !side.is_power_of_two() {
        return Err(TeleportError::GateSize { side, qubits: 0 });
    }
    let deviation = u.unitarity_deviation()?;
    if deviation > S::DEFAULT_TOL {
        return Err(TeleportError::NotUnitary {
            max_deviation: deviation.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(side.trailing_zeros() as usize)
}

/// Classical bits needed to name a measurement outcome on `n` qubits.
pub fn classical_bit_cost(num_qubits: usize) -> usize {
    2 * num_qubits
}

/// The classical side channel: which correction the receiver must apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalMessage {
    labels: Vec<PauliLabel>,
    success: bool,
}

impl ClassicalMessage {
    pub fn success(labels: Vec<PauliLabel>) -> Self {
        Self {
            labels,
            success: true,
        }
    }

    pub fn failure() -> Self {
        Self {
            labels: Vec::new(),
            success: false,
        }
    }

    pub fn is_success(&self) -> bool {
        self.success
    }

    pub fn labels(&self) -> &[PauliLabel] {
        &self.labels
    }

    /// The transmitted bits, two per measured label pair.
    pub fn bits(&self) -> Vec<u8> {
        self.labels
            .iter()
            .flat_map(|label| label.bits())
            .collect()
    }
}

/// Full record of one teleportation run.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportSession<S: Scalar> {
    num_qubits: usize,
    psi: Ket<S>,
    gate: ComplexMatrix<S>,
    outcome: Vec<PauliLabel>,
    message: ClassicalMessage,
    bob_raw: Ket<S>,
    bob_corrected: Ket<S>,
    seed: u64,
}

impl<S: Scalar> TeleportSession<S> {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn psi(&self) -> &Ket<S> {
        &self.psi
    }

    pub fn gate(&self) -> &ComplexMatrix<S> {
        &self.gate
    }

    pub fn outcome(&self) -> &[PauliLabel] {
        &self.outcome
    }

    pub fn message(&self) -> &ClassicalMessage {
        &self.message
    }

    /// Receiver's state right after the measurement, before correction.
    pub fn bob_raw(&self) -> &Ket<S> {
        &self.bob_raw
    }

    /// Receiver's state after applying the inverse word.
    pub fn bob_corrected(&self) -> &Ket<S> {
        &self.bob_corrected
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Index of the interval containing `r` under the cumulative distribution.
fn sample_index(probabilities: &[f64], r: f64) -> usize {
    let mut cumulative = 0.0;
    for (index, p) in probabilities.iter().enumerate() {
        cumulative += p;
        if r < cumulative {
            return index;
        }
    }
    probabilities.len() - 1
}

/// Runs one seeded teleportation of `psi` through the basis for `u`.
///
/// The measurement outcome is drawn from the Born distribution with an
/// inverse-transform lookup over the lexicographically ordered words, so a
/// seed fully determines the run. The receiver's corrected state is checked
/// against `u * psi` up to global phase before the session is returned.
pub fn run_teleportation<S: Scalar>(
    num_qubits: usize,
    psi: &Ket<S>,
    u: &ComplexMatrix<S>,
    seed: u64,
) -> Result<TeleportSession<S>, TeleportError> {
    if num_qubits == 0 {
        return Err(TeleportError::State(StateError::NoQubits));
    }
    if psi.num_qubits() != num_qubits {
        return Err(TeleportError::Linalg(LinalgError::QubitMismatch {
            expected: num_qubits,
            found: psi.num_qubits(),
        }));
    }
    let gate_span = gate_qubits(u)?;
    if gate_span != num_qubits {
        return Err(TeleportError::GateSize {
            side: u.rows(),
            qubits: num_qubits,
        });
    }
    let basis = measurement_basis_for(u)?;
    let joint = psi.tensor(delta_state::<S>(num_qubits)?.ket())?;
    let bras: Vec<Bra<S>> = basis.iter().map(|ms| ms.bra().clone()).collect();
    let probabilities = born_distribution(&bras, &joint)?;
    let probabilities_f64: Vec<f64> = probabilities
        .iter()
        .map(|p| p.to_f64().unwrap_or(0.0))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome_index = sample_index(&probabilities_f64, rng.random::<f64>());
    let outcome = all_words(num_qubits)
        .swap_remove(outcome_index);
    let selected = post_select(&basis[outcome_index], &joint)?;
    let bob_raw = selected.raw_residual;
    let correction = pauli_word::<S>(&outcome)?.dagger();
    let bob_corrected = correction.apply(&bob_raw)?;
    let expected = u.apply(psi)?;
    if !phase_equal(&bob_corrected, &expected, S::DEFAULT_TOL)? {
        return Err(TeleportError::CorrectionMismatch);
    }
    let message = ClassicalMessage::success(outcome.clone());
    Ok(TeleportSession {
        num_qubits,
        psi: psi.clone(),
        gate: u.clone(),
        outcome,
        message,
        bob_raw,
        bob_corrected,
        seed,
    })
}
