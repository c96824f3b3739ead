use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use cupcap::io;
use cupcap::states::{cup_state_from_matrix, is_entangled_two_qubit, phase_equal};
use cupcap::teleport::{is_scaled_special_unitary, pauli, run_teleportation, PauliLabel};
use cupcap::trace::estimate_abs_trace;
use cupcap::{Ket64, Matrix64};

#[derive(Parser)]
#[command(
    name = "cupcap",
    version,
    about = "Wire-diagram evaluation, state and gate transfer, and trace estimation"
)]
struct Cli {
    /// Write the JSON result to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Absolute tolerance for numeric checks
    #[arg(long, global = true, default_value_t = 1e-10, value_name = "TOL")]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a diagram file bottom to top
    DiagramEval {
        /// Diagram JSON file
        file: PathBuf,
    },
    /// Teleport a state through the measurement basis of a gate
    Teleport {
        /// State vector JSON file
        #[arg(long, value_name = "FILE")]
        psi: PathBuf,
        /// Unitary matrix JSON file
        #[arg(long, value_name = "FILE")]
        gate: PathBuf,
        /// Seed for the outcome draw
        #[arg(long)]
        seed: u64,
        /// Re-check the corrected state against the gated input within --tol
        #[arg(long)]
        verify: bool,
    },
    /// Estimate the trace modulus of a unitary from Bernoulli shots
    Trace {
        /// Unitary matrix JSON file
        #[arg(long, value_name = "FILE")]
        gate: PathBuf,
        /// Number of Bernoulli shots
        #[arg(long)]
        shots: u64,
        /// Seed for the shot sequence
        #[arg(long)]
        seed: u64,
    },
    /// Compare measured basis orthogonality with the algebraic predicate
    BasisCheck {
        /// 2x2 matrix JSON file
        file: PathBuf,
    },
    /// Decide whether a two-qubit state is entangled
    EntangleCheck {
        /// State vector JSON file
        file: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{message}")]
    Invalid { message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("orthogonality and the algebraic predicate disagree")]
    Disagreement,
}

impl CliError {
    fn invalid(err: impl std::fmt::Display) -> Self {
        CliError::Invalid {
            message: err.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid { .. } => 2,
            CliError::Io { .. } => 3,
            CliError::Disagreement => 5,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(4);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(output: &Option<PathBuf>, line: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, format!("{line}\n")).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })
        }
        None => {
            println!("{line}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::DiagramEval { file } => diagram_eval(&cli, file),
        Command::Teleport {
            psi,
            gate,
            seed,
            verify,
        } => teleport(&cli, psi, gate, *seed, *verify),
        Command::Trace { gate, shots, seed } => trace(&cli, gate, *shots, *seed),
        Command::BasisCheck { file } => basis_check(&cli, file),
        Command::EntangleCheck { file } => entangle_check(&cli, file),
    }
}

fn diagram_eval(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let text = read_file(file)?;
    let diagram = io::diagram_from_json(&text).map_err(CliError::invalid)?;
    let value = diagram.evaluate().map_err(CliError::invalid)?;
    let line = if value.shape() == (1, 1) {
        io::amplitude_to_json(value.get(0, 0))
    } else {
        io::matrix_to_json(&value)
    };
    emit(&cli.output, &line)
}

fn teleport(
    cli: &Cli,
    psi_path: &Path,
    gate_path: &Path,
    seed: u64,
    verify: bool,
) -> Result<(), CliError> {
    let psi = io::ket_from_json(&read_file(psi_path)?).map_err(CliError::invalid)?;
    let gate = io::matrix_from_json(&read_file(gate_path)?).map_err(CliError::invalid)?;
    let session =
        run_teleportation(psi.num_qubits(), &psi, &gate, seed).map_err(CliError::invalid)?;
    if verify {
        let expected = gate.apply(&psi).map_err(CliError::invalid)?;
        let matches = phase_equal(session.bob_corrected(), &expected, cli.tol)
            .map_err(CliError::invalid)?;
        if !matches {
            return Err(CliError::Invalid {
                message: format!(
                    "corrected state does not match the gated input within {}",
                    cli.tol
                ),
            });
        }
    }
    emit(&cli.output, &io::session_to_json(&session))
}

fn trace(cli: &Cli, gate_path: &Path, shots: u64, seed: u64) -> Result<(), CliError> {
    let gate = io::matrix_from_json(&read_file(gate_path)?).map_err(CliError::invalid)?;
    let report = estimate_abs_trace(&gate, shots, seed).map_err(CliError::invalid)?;
    emit(&cli.output, &io::trace_report_to_json(&report))
}

/// The four states prepared from `m` and its products with the three
/// nontrivial labels, in label order.
fn label_family(m: &Matrix64) -> Result<Vec<Ket64>, CliError> {
    PauliLabel::ALL
        .iter()
        .map(|label| {
            let product = pauli::<f64>(*label).matmul(m).map_err(CliError::invalid)?;
            Ok(cup_state_from_matrix(&product)
                .map_err(CliError::invalid)?
                .into_ket())
        })
        .collect()
}

fn basis_check(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let matrix = io::matrix_from_json(&read_file(file)?).map_err(CliError::invalid)?;
    let predicate = is_scaled_special_unitary(&matrix, cli.tol).map_err(CliError::invalid)?;
    let family = label_family(&matrix)?;
    let normalized: Option<Vec<Ket64>> = family
        .iter()
        .map(|ket| ket.normalized().ok())
        .collect();
    let orthogonal = match normalized {
        None => false,
        Some(units) => {
            let mut all_orthogonal = true;
            'pairs: for i in 0..units.len() {
                for j in (i + 1)..units.len() {
                    let overlap = units[i].inner(&units[j]).map_err(CliError::invalid)?;
                    if overlap.norm() > cli.tol {
                        all_orthogonal = false;
                        break 'pairs;
                    }
                }
            }
            all_orthogonal
        }
    };
    let line = format!(
        "{{\"orthogonal\":{orthogonal},\"scaled_special_unitary\":{predicate}}}"
    );
    emit(&cli.output, &line)?;
    if orthogonal != predicate {
        return Err(CliError::Disagreement);
    }
    Ok(())
}

fn entangle_check(cli: &Cli, file: &Path) -> Result<(), CliError> {
    let ket = io::ket_from_json(&read_file(file)?).map_err(CliError::invalid)?;
    let entangled = is_entangled_two_qubit(&ket, cli.tol).map_err(CliError::invalid)?;
    emit(&cli.output, &format!("{{\"entangled\":{entangled}}}"))
}
