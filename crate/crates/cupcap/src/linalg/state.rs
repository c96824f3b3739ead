use num_complex::Complex;
use num_traits::{One, Zero};

use super::{LinalgError, MAX_STATE_AMPLITUDES};
use crate::scalar::Scalar;

/// Number of qubits addressed by a power-of-two amplitude count.
pub(crate) fn qubits_for_len(len: usize) -> Result<usize, LinalgError> {
    if len == 0 || !len.is_power_of_two() {
        return Err(LinalgError::NotPowerOfTwo { len });
    }
    if len > MAX_STATE_AMPLITUDES {
        return Err(LinalgError::SizeLimit {
            requested: len,
            limit: MAX_STATE_AMPLITUDES,
        });
    }
    Ok(len.trailing_zeros() as usize)
}

fn check_finite<S: Scalar>(values: &[Complex<S>]) -> Result<(), LinalgError> {
    for (index, z) in values.iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
    }
    Ok(())
}

/// Column state vector over a register of qubits.
///
/// Amplitude `i` belongs to the computational basis state whose bit string is
/// the binary expansion of `i`, first qubit in the most significant bit. A
/// zero-qubit register is a single scalar amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket<S: Scalar> {
    num_qubits: usize,
    amps: Vec<Complex<S>>,
}

// A register always holds at least one amplitude (a zero-qubit register is a
// single scalar), so there is no `is_empty` companion for `len`.
#[allow(clippy::len_without_is_empty)]
impl<S: Scalar> Ket<S> {
    /// Builds a state for `num_qubits` qubits from `2^num_qubits` amplitudes.
    pub fn new(num_qubits: usize, amps: Vec<Complex<S>>) -> Result<Self, LinalgError> {
        let ket = Self::from_amplitudes(amps)?;
        if ket.num_qubits != num_qubits {
            return Err(LinalgError::QubitMismatch {
                expected: num_qubits,
                found: ket.num_qubits,
            });
        }
        Ok(ket)
    }

    /// Builds a state from amplitudes, inferring the qubit count.
    pub fn from_amplitudes(amps: Vec<Complex<S>>) -> Result<Self, LinalgError> {
        let num_qubits = qubits_for_len(amps.len())?;
        check_finite(&amps)?;
        Ok(Self { num_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self, LinalgError> {
        let len = if num_qubits < usize::BITS as usize {
            1usize << num_qubits
        } else {
            usize::MAX
        };
        if len > MAX_STATE_AMPLITUDES {
            return Err(LinalgError::SizeLimit {
                requested: len,
                limit: MAX_STATE_AMPLITUDES,
            });
        }
        if index >= len {
            return Err(LinalgError::BasisIndex {
                index,
                qubits: num_qubits,
            });
        }
        let mut amps = vec![Complex::zero(); len];
        amps[index] = Complex::one();
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Amplitude count, always `2^num_qubits`.
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<S>] {
        &self.amps
    }

    /// Amplitude at a basis index. Panics when the index is out of range.
    pub fn amplitude(&self, index: usize) -> Complex<S> {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> S {
        self.amps.iter().fold(S::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> S {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy. Errors on the zero vector.
    pub fn normalized(&self) -> Result<Self, LinalgError> {
        let norm = self.norm();
        if norm <= S::zero() {
            return Err(LinalgError::ZeroNorm);
        }
        let inv = S::one() / norm;
        Ok(self.scale(Complex::new(inv, S::zero())))
    }

    pub fn scale(&self, factor: Complex<S>) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|z| z * factor).collect(),
        }
    }

    /// Tensor product; `self` occupies the high-order bits of the result, so
    /// `|a> (x) |b>` places amplitude `a_i b_j` at index `i * other.len() + j`.
    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        let len = self.len() * other.len();
        if len > MAX_STATE_AMPLITUDES {
            return Err(LinalgError::SizeLimit {
                requested: len,
                limit: MAX_STATE_AMPLITUDES,
            });
        }
        let mut amps = Vec::with_capacity(len);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            num_qubits: self.num_qubits + other.num_qubits,
            amps,
        })
    }

    /// Inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex<S>, LinalgError> {
        if self.num_qubits != other.num_qubits {
            return Err(LinalgError::QubitMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        let mut sum = Complex::zero();
        for (a, b) in self.amps.iter().zip(&other.amps) {
            sum = sum + a.conj() * b;
        }
        Ok(sum)
    }

    /// Adjoint row vector: coefficients are conjugated.
    pub fn dual(&self) -> Bra<S> {
        Bra {
            num_qubits: self.num_qubits,
            coeffs: self.amps.iter().map(|z| z.conj()).collect(),
        }
    }
}

/// Row covector applied to states by plain summation.
///
/// Coefficients are stored exactly as given, with no implicit conjugation:
/// `pair` computes `sum_i c_i psi_i`. Use `Ket::dual` to obtain the adjoint
/// of a state when Hermitian pairing is wanted.
#[derive(Debug, Clone, PartialEq)]
pub struct Bra<S: Scalar> {
    num_qubits: usize,
    coeffs: Vec<Complex<S>>,
}

// Same shape rule as `Ket`: the coefficient list is never empty.
#[allow(clippy::len_without_is_empty)]
impl<S: Scalar> Bra<S> {
    /// Builds a covector for `num_qubits` qubits from `2^num_qubits` coefficients.
    pub fn new(num_qubits: usize, coeffs: Vec<Complex<S>>) -> Result<Self, LinalgError> {
        let bra = Self::from_coefficients(coeffs)?;
        if bra.num_qubits != num_qubits {
            return Err(LinalgError::QubitMismatch {
                expected: num_qubits,
                found: bra.num_qubits,
            });
        }
        Ok(bra)
    }

    /// Builds a covector from coefficients, inferring the qubit count.
    pub fn from_coefficients(coeffs: Vec<Complex<S>>) -> Result<Self, LinalgError> {
        let num_qubits = qubits_for_len(coeffs.len())?;
        check_finite(&coeffs)?;
        Ok(Self { num_qubits, coeffs })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Coefficient count, always `2^num_qubits`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Complex<S>] {
        &self.coeffs
    }

    /// Applies the covector to a full register: `sum_i c_i psi_i`.
    pub fn pair(&self, ket: &Ket<S>) -> Result<Complex<S>, LinalgError> {
        if self.num_qubits != ket.num_qubits {
            return Err(LinalgError::QubitMismatch {
                expected: self.num_qubits,
                found: ket.num_qubits,
            });
        }
        let mut sum = Complex::zero();
        for (c, psi) in self.coeffs.iter().zip(&ket.amps) {
            sum = sum + c * psi;
        }
        Ok(sum)
    }

    /// Hermitian inner product of coefficient vectors, conjugate-linear in `self`.
    pub fn overlap(&self, other: &Self) -> Result<Complex<S>, LinalgError> {
        if self.num_qubits != other.num_qubits {
            return Err(LinalgError::QubitMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        let mut sum = Complex::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            sum = sum + a.conj() * b;
        }
        Ok(sum)
    }

    pub fn norm_sqr(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> S {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy. Errors on the zero covector.
    pub fn normalized(&self) -> Result<Self, LinalgError> {
        let norm = self.norm();
        if norm <= S::zero() {
            return Err(LinalgError::ZeroNorm);
        }
        let inv = Complex::new(S::one() / norm, S::zero());
        Ok(Self {
            num_qubits: self.num_qubits,
            coeffs: self.coeffs.iter().map(|z| z * inv).collect(),
        })
    }

    /// Adjoint column vector: coefficients are conjugated back.
    pub fn dual(&self) -> Ket<S> {
        Ket {
            num_qubits: self.num_qubits,
            amps: self.coeffs.iter().map(|z| z.conj()).collect(),
        }
    }
}
