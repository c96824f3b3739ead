//! Seeded generators for matrices, states, and unitaries.
//!
//! Sampling always runs in `f64` and converts at the end, so a seed produces
//! the same draw for every scalar type up to rounding.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{ComplexMatrix, Ket, LinalgError};
use crate::scalar::{cplx, Scalar};

/// Stream cipher generator with a fixed, portable output sequence.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_symmetric(rng: &mut impl Rng) -> f64 {
    2.0 * rng.random::<f64>() - 1.0
}

/// Matrix with independent entries uniform on the complex square
/// `[-1, 1) x [-1, 1)`.
pub fn random_matrix<S: Scalar>(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
) -> Result<ComplexMatrix<S>, LinalgError> {
    let entries = (0..rows * cols)
        .map(|_| cplx::<S>(uniform_symmetric(rng), uniform_symmetric(rng)))
        .collect();
    ComplexMatrix::new(rows, cols, entries)
}

/// Random `2x2` matrix rejected until it is comfortably invertible.
pub fn random_invertible_2x2<S: Scalar>(rng: &mut impl Rng) -> ComplexMatrix<S> {
    loop {
        let m = random_matrix::<f64>(rng, 2, 2).expect("fixed 2x2 shape");
        if m.det_2x2().expect("fixed 2x2 shape").norm() >= 0.2 {
            return convert(&m);
        }
    }
}

/// State with independent uniform amplitudes, rejected while its norm is
/// too small to normalize reliably.
pub fn random_ket<S: Scalar>(
    rng: &mut impl Rng,
    num_qubits: usize,
) -> Result<Ket<S>, LinalgError> {
    loop {
        let amps: Vec<Complex<f64>> = (0..1usize << num_qubits)
            .map(|_| Complex::new(uniform_symmetric(rng), uniform_symmetric(rng)))
            .collect();
        let ket = Ket::from_amplitudes(amps)?;
        if ket.norm_sqr() >= 0.1 {
            return Ket::from_amplitudes(
                ket.amplitudes()
                    .iter()
                    .map(|z| cplx::<S>(z.re, z.im))
                    .collect(),
            );
        }
    }
}

/// Unitary drawn by orthonormalizing a complex Gaussian matrix.
///
/// Gram-Schmidt runs twice per column in `f64` for stability; the result is
/// unitary to near machine precision before conversion to `S`.
pub fn random_unitary<S: Scalar>(
    rng: &mut impl Rng,
    side: usize,
) -> Result<ComplexMatrix<S>, LinalgError> {
    if side == 0 {
        return Err(LinalgError::EmptyShape { rows: 0, cols: 0 });
    }
    'draw: loop {
        let mut columns: Vec<Vec<Complex<f64>>> = (0..side)
            .map(|_| {
                (0..side)
                    .map(|_| {
                        let re: f64 = StandardNormal.sample(rng);
                        let im: f64 = StandardNormal.sample(rng);
                        Complex::new(re, im)
                    })
                    .collect()
            })
            .collect();
        for j in 0..side {
            let (settled, rest) = columns.split_at_mut(j);
            let column = &mut rest[0];
            for _pass in 0..2 {
                for reference in settled.iter() {
                    let overlap: Complex<f64> = reference
                        .iter()
                        .zip(column.iter())
                        .map(|(q, v)| q.conj() * v)
                        .fold(Complex::new(0.0, 0.0), |acc, z| acc + z);
                    for (value, q) in column.iter_mut().zip(reference.iter()) {
                        *value -= overlap * q;
                    }
                }
            }
            let norm = column.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue 'draw;
            }
            for value in column.iter_mut() {
                *value /= norm;
            }
        }
        let mut entries = Vec::with_capacity(side * side);
        for row in 0..side {
            for column in columns.iter() {
                entries.push(cplx::<S>(column[row].re, column[row].im));
            }
        }
        return ComplexMatrix::new(side, side, entries);
    }
}

fn convert<S: Scalar>(m: &ComplexMatrix<f64>) -> ComplexMatrix<S> {
    let entries = m
        .entries()
        .iter()
        .map(|z| cplx::<S>(z.re, z.im))
        .collect();
    ComplexMatrix::new(m.rows(), m.cols(), entries).expect("shape preserved")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        let mut a = seeded_rng(9);
        let mut b = seeded_rng(9);
        let first = random_matrix::<f64>(&mut a, 3, 2).unwrap();
        let second = random_matrix::<f64>(&mut b, 3, 2).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = seeded_rng(4);
        for side in [2usize, 3, 4, 8] {
            let u = random_unitary::<f64>(&mut rng, side).unwrap();
            assert!(
                u.is_unitary(1e-12),
                "side {side} deviation {:?}",
                u.unitarity_deviation()
            );
        }
    }

    #[test]
    fn random_invertible_matrices_have_large_determinants() {
        let mut rng = seeded_rng(12);
        for _ in 0..50 {
            let m = random_invertible_2x2::<f64>(&mut rng);
            assert!(m.det_2x2().unwrap().norm() >= 0.2);
            assert!(m.inverse_2x2().is_ok());
        }
    }

    #[test]
    fn random_kets_are_normalizable() {
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let ket = random_ket::<f64>(&mut rng, 3).unwrap();
            assert_eq!(ket.num_qubits(), 3);
            assert!(ket.normalized().is_ok());
        }
    }
}
