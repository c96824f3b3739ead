//! JSON wire formats for matrices, states, diagrams, and run reports.
//!
//! All formats are concrete in `f64`. Complex numbers travel as `[re, im]`
//! pairs, matrices as row-major entry lists with explicit shape, and states
//! as amplitude lists with an explicit qubit count. Serialization uses the
//! shortest representation that round-trips each float.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, Generator, Slice};
use crate::linalg::{ComplexMatrix, Ket, LinalgError};
use crate::states::{PreparedState, StateError};
use crate::teleport::TeleportSession;
use crate::trace::TraceEstimate;

/// Errors from parsing or converting wire data.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct KetJson {
    qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PreparedStateJson {
    label: String,
    ket: KetJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "g", rename_all = "lowercase")]
enum GeneratorJson {
    Id,
    Cup { m: String },
    Cap { m: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct DiagramJson {
    matrices: BTreeMap<String, MatrixJson>,
    slices: Vec<Vec<GeneratorJson>>,
}

#[derive(Debug, Serialize)]
struct MessageJson {
    success: bool,
    bits: Vec<u8>,
}

#[derive(Debug, Serialize)]
struct SessionJson {
    n: usize,
    psi: KetJson,
    gate: MatrixJson,
    outcome: Vec<String>,
    message: MessageJson,
    bob_raw: KetJson,
    bob_corrected: KetJson,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct TraceReportJson {
    n: usize,
    shots: u64,
    successes: u64,
    estimate: f64,
    std_error: f64,
    exact_abs_trace: f64,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct AmplitudeJson {
    amplitude: [f64; 2],
}

fn pairs_from_complex(values: &[Complex<f64>]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

fn complex_from_pairs(pairs: &[[f64; 2]]) -> Vec<Complex<f64>> {
    pairs.iter().map(|[re, im]| Complex::new(*re, *im)).collect()
}

fn matrix_to_repr(m: &ComplexMatrix<f64>) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: pairs_from_complex(m.entries()),
    }
}

fn matrix_from_repr(repr: &MatrixJson) -> Result<ComplexMatrix<f64>, IoError> {
    Ok(ComplexMatrix::new(
        repr.rows,
        repr.cols,
        complex_from_pairs(&repr.entries),
    )?)
}

fn ket_to_repr(k: &Ket<f64>) -> KetJson {
    KetJson {
        qubits: k.num_qubits(),
        amplitudes: pairs_from_complex(k.amplitudes()),
    }
}

fn ket_from_repr(repr: &KetJson) -> Result<Ket<f64>, IoError> {
    Ok(Ket::new(repr.qubits, complex_from_pairs(&repr.amplitudes))?)
}

fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain wire data always serializes")
}

pub fn matrix_to_json(m: &ComplexMatrix<f64>) -> String {
    to_line(&matrix_to_repr(m))
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix<f64>, IoError> {
    matrix_from_repr(&serde_json::from_str(text)?)
}

pub fn ket_to_json(k: &Ket<f64>) -> String {
    to_line(&ket_to_repr(k))
}

pub fn ket_from_json(text: &str) -> Result<Ket<f64>, IoError> {
    ket_from_repr(&serde_json::from_str(text)?)
}

pub fn prepared_state_to_json(state: &PreparedState<f64>) -> String {
    to_line(&PreparedStateJson {
        label: state.label().to_string(),
        ket: ket_to_repr(state.ket()),
    })
}

pub fn prepared_state_from_json(text: &str) -> Result<PreparedState<f64>, IoError> {
    let repr: PreparedStateJson = serde_json::from_str(text)?;
    Ok(PreparedState::new(repr.label, ket_from_repr(&repr.ket)?)?)
}

pub fn diagram_to_json(diagram: &Diagram<f64>) -> String {
    let matrices = diagram
        .matrices()
        .iter()
        .map(|(name, m)| (name.clone(), matrix_to_repr(m)))
        .collect();
    let slices = diagram
        .slices()
        .iter()
        .map(|slice| {
            slice
                .generators()
                .iter()
                .map(|generator| match generator {
                    Generator::IdWire => GeneratorJson::Id,
                    Generator::Cup(m) => GeneratorJson::Cup { m: m.clone() },
                    Generator::Cap(m) => GeneratorJson::Cap { m: m.clone() },
                })
                .collect()
        })
        .collect();
    to_line(&DiagramJson { matrices, slices })
}

/// Parses a diagram; slices are listed bottom first.
pub fn diagram_from_json(text: &str) -> Result<Diagram<f64>, IoError> {
    let repr: DiagramJson = serde_json::from_str(text)?;
    let mut matrices = BTreeMap::new();
    for (name, matrix) in &repr.matrices {
        matrices.insert(name.clone(), matrix_from_repr(matrix)?);
    }
    let slices = repr
        .slices
        .into_iter()
        .map(|generators| {
            Slice::new(
                generators
                    .into_iter()
                    .map(|generator| match generator {
                        GeneratorJson::Id => Generator::IdWire,
                        GeneratorJson::Cup { m } => Generator::Cup(m),
                        GeneratorJson::Cap { m } => Generator::Cap(m),
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(Diagram::new(matrices, slices))
}

pub fn session_to_json(session: &TeleportSession<f64>) -> String {
    to_line(&SessionJson {
        n: session.num_qubits(),
        psi: ket_to_repr(session.psi()),
        gate: matrix_to_repr(session.gate()),
        outcome: session
            .outcome()
            .iter()
            .map(|label| label.code().to_string())
            .collect(),
        message: MessageJson {
            success: session.message().is_success(),
            bits: session.message().bits(),
        },
        bob_raw: ket_to_repr(session.bob_raw()),
        bob_corrected: ket_to_repr(session.bob_corrected()),
        seed: session.seed(),
    })
}

pub fn trace_report_to_json(report: &TraceEstimate<f64>) -> String {
    to_line(&TraceReportJson {
        n: report.num_qubits(),
        shots: report.shots(),
        successes: report.successes(),
        estimate: report.estimate(),
        std_error: report.std_error(),
        exact_abs_trace: report.exact_abs_trace(),
        seed: report.seed(),
    })
}

/// One complex scalar as `{"amplitude": [re, im]}`.
pub fn amplitude_to_json(value: Complex<f64>) -> String {
    to_line(&AmplitudeJson {
        amplitude: [value.re, value.im],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_preserves_entries() {
        let text = r#"{"rows":2,"cols":2,"entries":[[0.0,0.0],[1.0,0.0],[-1.0,0.0],[0.0,0.0]]}"#;
        let matrix = matrix_from_json(text).unwrap();
        assert_eq!(matrix.get(0, 1), Complex::new(1.0, 0.0));
        assert_eq!(matrix.get(1, 0), Complex::new(-1.0, 0.0));
        assert_eq!(matrix_to_json(&matrix), text);
    }

    #[test]
    fn matrix_json_must_be_consistent() {
        let text = r#"{"rows":2,"cols":2,"entries":[[1.0,0.0]]}"#;
        assert!(matches!(
            matrix_from_json(text),
            Err(IoError::Linalg(LinalgError::EntryCount { .. }))
        ));
        assert!(matches!(
            matrix_from_json("not json"),
            Err(IoError::Json(_))
        ));
    }

    #[test]
    fn ket_round_trip_checks_qubit_count() {
        let text = r#"{"qubits":1,"amplitudes":[[0.6,0.0],[0.0,0.8]]}"#;
        let ket = ket_from_json(text).unwrap();
        assert_eq!(ket.num_qubits(), 1);
        assert_eq!(ket_to_json(&ket), text);
        let wrong = r#"{"qubits":2,"amplitudes":[[1.0,0.0],[0.0,0.0]]}"#;
        assert!(matches!(
            ket_from_json(wrong),
            Err(IoError::Linalg(LinalgError::QubitMismatch {
                expected: 2,
                found: 1
            }))
        ));
    }

    #[test]
    fn prepared_state_round_trip() {
        let state = crate::states::delta_state::<f64>(1).unwrap();
        let text = prepared_state_to_json(&state);
        let back = prepared_state_from_json(&text).unwrap();
        assert_eq!(back.label(), "delta");
        assert_eq!(back.ket(), state.ket());
    }

    #[test]
    fn diagram_json_evaluates() {
        let text = r#"{
            "matrices": {"y": {"rows":2,"cols":2,"entries":[[0.0,0.0],[1.0,0.0],[-1.0,0.0],[0.0,0.0]]}},
            "slices": [[{"g":"cup","m":"y"}], [{"g":"cap","m":"y"}]]
        }"#;
        let diagram = diagram_from_json(text).unwrap();
        let value = diagram.evaluate().unwrap();
        assert_eq!(value.shape(), (1, 1));
        assert_eq!(value.get(0, 0), Complex::new(2.0, 0.0));
        let round_trip = diagram_from_json(&diagram_to_json(&diagram)).unwrap();
        assert_eq!(round_trip, diagram);
    }

    #[test]
    fn diagram_json_rejects_unknown_generator_kind() {
        let text = r#"{"matrices":{},"slices":[[{"g":"swap"}]]}"#;
        assert!(matches!(diagram_from_json(text), Err(IoError::Json(_))));
    }

    #[test]
    fn session_json_shape() {
        let psi = Ket::from_amplitudes(vec![Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)])
            .unwrap();
        let gate = ComplexMatrix::identity(2).unwrap();
        let session = crate::teleport::run_teleportation(1, &psi, &gate, 5).unwrap();
        let text = session_to_json(&session);
        assert!(text.starts_with(r#"{"n":1,"psi":"#));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["seed"], 5);
        assert_eq!(value["message"]["bits"].as_array().unwrap().len(), 2);
        let code = value["outcome"][0].as_str().unwrap();
        assert!(["00", "01", "10", "11"].contains(&code));
    }

    #[test]
    fn trace_report_json_shape() {
        let gate = ComplexMatrix::identity(2).unwrap();
        let report = crate::trace::estimate_abs_trace(&gate, 10, 3).unwrap();
        let text = trace_report_to_json(&report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["n"], 1);
        assert_eq!(value["shots"], 10);
        assert_eq!(value["successes"], 10);
        assert_eq!(value["estimate"], 2.0);
        assert_eq!(value["std_error"], 0.0);
        assert_eq!(value["exact_abs_trace"], 2.0);
        assert_eq!(value["seed"], 3);
    }

    #[test]
    fn amplitude_json_is_compact() {
        assert_eq!(
            amplitude_to_json(Complex::new(2.0, 0.0)),
            r#"{"amplitude":[2.0,0.0]}"#
        );
    }
}
