//! Planar wire diagrams built from identity wires, cups, and caps.
//!
//! A diagram is a stack of slices read bottom to top. Each slice is a row of
//! generators read left to right, and each cup or cap generator carries the
//! name of a `2x2` coefficient matrix. A cup creates two wires whose joint
//! state has amplitude `m[a][b]` on `|ab>`; a cap consumes two wires by
//! summing against the same row-major coefficients. Wires map to tensor
//! factors left to right, leftmost in the most significant bit.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};
use crate::scalar::Scalar;

/// One generator in a slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Straight wire: one input, one output.
    IdWire,
    /// Creates two wires; carries the name of its coefficient matrix.
    Cup(String),
    /// Consumes two wires; carries the name of its coefficient matrix.
    Cap(String),
}

impl Generator {
    /// Wires entering from below.
    pub fn inputs(&self) -> usize {
        match self {
            Generator::IdWire => 1,
            Generator::Cup(_) => 0,
            Generator::Cap(_) => 2,
        }
    }

    /// Wires leaving above.
    pub fn outputs(&self) -> usize {
        match self {
            Generator::IdWire => 1,
            Generator::Cup(_) => 2,
            Generator::Cap(_) => 0,
        }
    }
}

/// A horizontal row of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    generators: Vec<Generator>,
}

impl Slice {
    pub fn new(generators: Vec<Generator>) -> Self {
        Self { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Total wires entering the slice from below.
    pub fn input_arity(&self) -> usize {
        self.generators.iter().map(Generator::inputs).sum()
    }

    /// Total wires leaving the slice above.
    pub fn output_arity(&self) -> usize {
        self.generators.iter().map(Generator::outputs).sum()
    }
}

/// Errors from diagram validation and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("matrix {name:?} is {rows}x{cols}, cup and cap coefficients must be 2x2")]
    MatrixNotTwoByTwo {
        name: String,
        rows: usize,
        cols: usize,
    },
    #[error("slice {slice}, generator {position}: no matrix named {name:?}")]
    UnknownMatrix {
        slice: usize,
        position: usize,
        name: String,
    },
    #[error("slice {slice} outputs {outputs} wires, the slice above expects {inputs}")]
    ArityMismatch {
        slice: usize,
        outputs: usize,
        inputs: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A stack of slices plus the table of named coefficient matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram<S: Scalar> {
    matrices: BTreeMap<String, ComplexMatrix<S>>,
    slices: Vec<Slice>,
}

impl<S: Scalar> Diagram<S> {
    /// Builds a diagram; slices are ordered bottom first.
    pub fn new(matrices: BTreeMap<String, ComplexMatrix<S>>, slices: Vec<Slice>) -> Self {
        Self { matrices, slices }
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn matrices(&self) -> &BTreeMap<String, ComplexMatrix<S>> {
        &self.matrices
    }

    /// Wires entering the whole diagram from below.
    pub fn input_arity(&self) -> usize {
        self.slices.first().map_or(0, Slice::input_arity)
    }

    /// Wires leaving the whole diagram above.
    pub fn output_arity(&self) -> usize {
        self.slices.last().map_or(0, Slice::output_arity)
    }

    /// Checks matrix shapes, name references, and slice-to-slice arities.
    ///
    /// Reports the first offence: shape problems in table order, then
    /// unknown names by slice and position, then arity breaks bottom up.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for (name, matrix) in &self.matrices {
            if matrix.shape() != (2, 2) {
                return Err(DiagramError::MatrixNotTwoByTwo {
                    name: name.clone(),
                    rows: matrix.rows(),
                    cols: matrix.cols(),
                });
            }
        }
        for (slice_index, slice) in self.slices.iter().enumerate() {
            for (position, generator) in slice.generators().iter().enumerate() {
                let name = match generator {
                    Generator::IdWire => continue,
                    Generator::Cup(name) | Generator::Cap(name) => name,
                };
                if !self.matrices.contains_key(name) {
                    return Err(DiagramError::UnknownMatrix {
                        slice: slice_index,
                        position,
                        name: name.clone(),
                    });
                }
            }
        }
        for (slice_index, pair) in self.slices.windows(2).enumerate() {
            let outputs = pair[0].output_arity();
            let inputs = pair[1].input_arity();
            if outputs != inputs {
                return Err(DiagramError::ArityMismatch {
                    slice: slice_index,
                    outputs,
                    inputs,
                });
            }
        }
        Ok(())
    }

    /// Validates, then multiplies the slice matrices bottom to top.
    ///
    /// The result maps the diagram's input wires to its output wires; a
    /// closed diagram yields a `1x1` matrix holding its amplitude, and an
    /// empty diagram yields `[[1]]`.
    pub fn evaluate(&self) -> Result<ComplexMatrix<S>, DiagramError> {
        self.validate()?;
        let mut acc: Option<ComplexMatrix<S>> = None;
        for slice in &self.slices {
            let matrix = self.slice_matrix(slice)?;
            acc = Some(match acc {
                None => matrix,
                Some(below) => matrix.matmul(&below)?,
            });
        }
        match acc {
            Some(result) => Ok(result),
            None => Ok(ComplexMatrix::identity(1)?),
        }
    }

    fn slice_matrix(&self, slice: &Slice) -> Result<ComplexMatrix<S>, DiagramError> {
        let mut acc = ComplexMatrix::identity(1)?;
        for generator in slice.generators() {
            let factor = match generator {
                Generator::IdWire => ComplexMatrix::identity(2)?,
                Generator::Cup(name) => cup_column(&self.matrices[name])?,
                Generator::Cap(name) => cap_row(&self.matrices[name])?,
            };
            acc = acc.kron(&factor)?;
        }
        Ok(acc)
    }
}

/// `4x1` column of a cup: row-major coefficients of its matrix.
fn cup_column<S: Scalar>(m: &ComplexMatrix<S>) -> Result<ComplexMatrix<S>, DiagramError> {
    Ok(ComplexMatrix::new(4, 1, m.entries().to_vec())?)
}

/// `1x4` row of a cap: row-major coefficients of its matrix.
fn cap_row<S: Scalar>(m: &ComplexMatrix<S>) -> Result<ComplexMatrix<S>, DiagramError> {
    Ok(ComplexMatrix::new(1, 4, m.entries().to_vec())?)
}

fn require_2x2<S: Scalar>(m: &ComplexMatrix<S>) -> Result<(), DiagramError> {
    if m.shape() != (2, 2) {
        return Err(DiagramError::Linalg(LinalgError::WrongShape {
            rows: m.rows(),
            cols: m.cols(),
            expected_rows: 2,
            expected_cols: 2,
        }));
    }
    Ok(())
}

/// Matrix of the wave formed by a cap directly above a cup: `cap * cup`.
pub fn compose_min_max<S: Scalar>(
    cap: &ComplexMatrix<S>,
    cup: &ComplexMatrix<S>,
) -> Result<ComplexMatrix<S>, DiagramError> {
    require_2x2(cap)?;
    require_2x2(cup)?;
    Ok(cap.matmul(cup)?)
}

/// Whether a cap and cup pair straightens zig-zags into plain wires, which
/// holds exactly when the two matrices are mutually inverse.
pub fn is_topological<S: Scalar>(
    cap: &ComplexMatrix<S>,
    cup: &ComplexMatrix<S>,
    tol: S,
) -> Result<bool, DiagramError> {
    require_2x2(cap)?;
    require_2x2(cup)?;
    let identity = ComplexMatrix::identity(2)?;
    Ok(cap.matmul(cup)?.approx_eq(&identity, tol)?
        && cup.matmul(cap)?.approx_eq(&identity, tol)?)
}
