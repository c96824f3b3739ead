//! Real scalar abstraction shared by every matrix and state type.

use std::fmt;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real field backing all complex arithmetic in this crate.
///
/// Implemented for `f32` and `f64`. The associated tolerances scale with the
/// precision of the type: equality and unitarity checks default to
/// `DEFAULT_TOL`, while measurement-basis orthogonality and completeness
/// checks use the looser `BASIS_TOL`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Absolute tolerance used by checks that do not take an explicit one.
    const DEFAULT_TOL: Self;
    /// Tolerance for measurement-basis orthogonality and completeness checks.
    const BASIS_TOL: Self;
}

impl Scalar for f64 {
    const DEFAULT_TOL: Self = 1e-10;
    const BASIS_TOL: Self = 1e-8;
}

impl Scalar for f32 {
    const DEFAULT_TOL: Self = 1e-4;
    const BASIS_TOL: Self = 1e-3;
}

/// Converts an `f64` literal into the scalar type.
pub(crate) fn real<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("f64 literal must be representable in the scalar type")
}

/// Builds a complex number from `f64` literals.
pub(crate) fn cplx<S: Scalar>(re: f64, im: f64) -> Complex<S> {
    Complex::new(real(re), real(im))
}
