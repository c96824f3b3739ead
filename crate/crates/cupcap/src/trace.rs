//! Monte Carlo estimation of the trace modulus of a unitary.
//!
//! Closing a gate over an unnormalized correlated pair turns its trace into
//! a measurement amplitude: applying the gate to one half and post-selecting
//! the pair measurement on the doubled register yields exactly `tr(u)`. A
//! Bernoulli experiment with success probability `|tr(u)|^2 / 4^n` then
//! recovers the modulus from counts alone.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};
use crate::scalar::{real, Scalar};
use crate::states::{delta_state, measurement_state_from_matrix, post_select, StateError};

/// Errors from trace contraction and estimation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("matrix side {side} is not a power-of-two register of at least one qubit")]
    BadSide { side: usize },
    #[error("gate is not unitary, largest deviation {max_deviation:.3e}")]
    NotUnitary { max_deviation: f64 },
    #[error("shot count must be at least one")]
    ZeroShots,
}

/// Result of one seeded estimation run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEstimate<S: Scalar> {
    num_qubits: usize,
    shots: u64,
    successes: u64,
    estimate: S,
    std_error: S,
    exact_abs_trace: S,
    seed: u64,
}

impl<S: Scalar> TraceEstimate<S> {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn successes(&self) -> u64 {
        self.successes
    }

    /// Point estimate of the trace modulus: `2^n * sqrt(successes / shots)`.
    pub fn estimate(&self) -> S {
        self.estimate
    }

    /// Delta-method standard error of the estimate; with zero successes it
    /// degrades to the upper bound `2^n * sqrt(3 / shots)`.
    pub fn std_error(&self) -> S {
        self.std_error
    }

    /// Trace modulus from the exact contraction, for comparison.
    pub fn exact_abs_trace(&self) -> S {
        self.exact_abs_trace
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// True when no shot succeeded, so the estimate is only an upper bound.
    pub fn hit_floor(&self) -> bool {
        self.successes == 0
    }
}

fn register_qubits<S: Scalar>(u: &ComplexMatrix<S>) -> Result<usize, TraceError> {
    if !u.is_square() {
        return Err(TraceError::Linalg(LinalgError::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        }));
    }
    let side = u.rows();
    if side < 2 || !side.is_power_of_two() {
        return Err(TraceError::BadSide { side });
    }
    Ok(side.trailing_zeros() as usize)
}

/// Contracts a square matrix over the correlated pair: applies `u` to the
/// first half of the doubled register and post-selects the pair measurement.
/// The resulting amplitude equals the trace of `u`.
pub fn exact_trace_amplitude<S: Scalar>(u: &ComplexMatrix<S>) -> Result<Complex<S>, TraceError> {
    let num_qubits = register_qubits(u)?;
    let side = u.rows();
    let widened = u.kron(&ComplexMatrix::identity(side)?)?;
    let pair = delta_state::<S>(num_qubits)?;
    let evolved = widened.apply(pair.ket())?;
    let measurement = measurement_state_from_matrix(&ComplexMatrix::identity(side)?)?;
    let result = post_select(&measurement, &evolved)?;
    Ok(result
        .amplitude
        .expect("full measurement always yields an amplitude"))
}

/// Probability that one Bernoulli shot succeeds: `|tr(u)|^2 / 4^n`.
/// The gate must be unitary.
pub fn success_probability<S: Scalar>(u: &ComplexMatrix<S>) -> Result<S, TraceError> {
    let num_qubits = register_qubits(u)?;
    let deviation = u.unitarity_deviation()?;
    if deviation > S::DEFAULT_TOL {
        return Err(TraceError::NotUnitary {
            max_deviation: deviation.to_f64().unwrap_or(f64::NAN),
        });
    }
    let amplitude = exact_trace_amplitude(u)?;
    let outcomes = real::<S>((1u64 << (2 * num_qubits)) as f64);
    Ok((amplitude.norm_sqr() / outcomes).min(S::one()))
}

/// Runs a seeded Bernoulli experiment and converts counts into an estimate
/// of `|tr(u)|`.
pub fn estimate_abs_trace<S: Scalar>(
    u: &ComplexMatrix<S>,
    shots: u64,
    seed: u64,
) -> Result<TraceEstimate<S>, TraceError> {
    if shots == 0 {
        return Err(TraceError::ZeroShots);
    }
    let num_qubits = register_qubits(u)?;
    let p = success_probability(u)?;
    let p_f64 = p.to_f64().unwrap_or(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    for _ in 0..shots {
        if rng.random::<f64>() < p_f64 {
            successes += 1;
        }
    }
    let dimension = real::<S>((1u64 << num_qubits) as f64);
    let shot_count = real::<S>(shots as f64);
    let p_hat = real::<S>(successes as f64) / shot_count;
    let estimate = dimension * p_hat.sqrt();
    let std_error = if successes == 0 {
        dimension * (real::<S>(3.0) / shot_count).sqrt()
    } else {
        let bernoulli_sd = (p_hat * (S::one() - p_hat) / shot_count).sqrt();
        dimension * bernoulli_sd / (real::<S>(2.0) * p_hat.sqrt())
    };
    let exact_abs_trace = exact_trace_amplitude(u)?.norm();
    Ok(TraceEstimate {
        num_qubits,
        shots,
        successes,
        estimate,
        std_error,
        exact_abs_trace,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn contraction_recovers_the_trace() {
        assert_eq!(
            exact_trace_amplitude(&M::identity(2).unwrap()).unwrap(),
            c(2.0, 0.0)
        );
        assert_eq!(
            exact_trace_amplitude(&M::identity(8).unwrap()).unwrap(),
            c(8.0, 0.0)
        );
        let z = M::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(exact_trace_amplitude(&z).unwrap(), c(0.0, 0.0));
        let skew = M::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(exact_trace_amplitude(&skew).unwrap(), c(5.0, 0.0));
    }

    #[test]
    fn contraction_rejects_bad_shapes() {
        let odd = M::identity(3).unwrap();
        assert_eq!(
            exact_trace_amplitude(&odd),
            Err(TraceError::BadSide { side: 3 })
        );
        let scalar = M::identity(1).unwrap();
        assert_eq!(
            exact_trace_amplitude(&scalar),
            Err(TraceError::BadSide { side: 1 })
        );
    }

    #[test]
    fn success_probability_oracles() {
        assert_eq!(success_probability(&M::identity(2).unwrap()).unwrap(), 1.0);
        let z = M::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(success_probability(&z).unwrap(), 0.0);
        let phase = M::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        )
        .unwrap();
        assert_eq!(success_probability(&phase).unwrap(), 0.5);
        let shear = M::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            success_probability(&shear),
            Err(TraceError::NotUnitary { .. })
        ));
    }

    #[test]
    fn certain_outcomes_give_exact_estimates() {
        let report = estimate_abs_trace(&M::identity(2).unwrap(), 1000, 7).unwrap();
        assert_eq!(report.successes(), 1000);
        assert_eq!(report.estimate(), 2.0);
        assert_eq!(report.std_error(), 0.0);
        assert_eq!(report.exact_abs_trace(), 2.0);
        assert!(!report.hit_floor());

        let z = M::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let report = estimate_abs_trace(&z, 1000, 7).unwrap();
        assert_eq!(report.successes(), 0);
        assert_eq!(report.estimate(), 0.0);
        assert!(report.hit_floor());
        assert!((report.std_error() - 2.0 * (3.0f64 / 1000.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn runs_are_deterministic_in_the_seed() {
        let phase = M::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        )
        .unwrap();
        let a = estimate_abs_trace(&phase, 5000, 42).unwrap();
        let b = estimate_abs_trace(&phase, 5000, 42).unwrap();
        assert_eq!(a, b);
        let c = estimate_abs_trace(&phase, 5000, 43).unwrap();
        assert_eq!(a.shots(), c.shots());
    }

    #[test]
    fn zero_shots_is_rejected() {
        assert_eq!(
            estimate_abs_trace(&M::identity(2).unwrap(), 0, 1),
            Err(TraceError::ZeroShots)
        );
    }
}
