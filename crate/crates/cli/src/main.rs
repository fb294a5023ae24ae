use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qudit_compress::estimate::{ion_estimate, ion_scenario, photonic_estimate, IonErrorModel};
use qudit_compress::library::{cluster_state_circuit, cpf4_barenco_circuit, cpf_qudit_circuit, cz_circuit};
use qudit_compress::simulator::{circuit_unitary, verify_equivalence};
use qudit_compress::{full_pipeline, Circuit64, Encoding, Error, PartitionStrategy, PipelineOptions};

const EXIT_INPUT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "qcompress", version, about = "Compress qubit circuits onto qudit registers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interaction graph, best partition and compression bounds.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        partition: PartitionArgs,
    },
    /// Rewrite a circuit onto qudits and write it to a file.
    Compress {
        file: PathBuf,
        #[command(flatten)]
        partition: PartitionArgs,
        /// Fuse two-qudit gates acting on the same pair.
        #[arg(long)]
        merge: bool,
        /// Fold every single-qudit gate into a neighbouring two-qudit gate.
        #[arg(long)]
        absorb_local: bool,
        /// Fail with exit code 4 unless the rewrite is verified within tolerance.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Qudit dimensions, one per group (may exceed 2^group size).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a compressed circuit against its qubit original.
    Verify {
        qubit: PathBuf,
        qudit: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Hardware cost estimates.
    #[command(subcommand)]
    Estimate(EstimateCommand),
    /// Emit reference circuits.
    #[command(subcommand)]
    Library(LibraryCommand),
}

#[derive(Args)]
struct PartitionArgs {
    /// Number of qudits.
    #[arg(short, long)]
    k: usize,
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    #[arg(long)]
    heuristic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl PartitionArgs {
    fn options(&self) -> PipelineOptions {
        let strategy = if self.exact {
            PartitionStrategy::Exact
        } else if self.heuristic {
            PartitionStrategy::Heuristic
        } else {
            PartitionStrategy::Auto
        };
        PipelineOptions { strategy, seed: self.seed, ..PipelineOptions::new(self.k) }
    }
}

#[derive(Subcommand)]
enum EstimateCommand {
    /// OAM beam-splitter count and success probability of a photonic gate.
    Photonic {
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
    },
    /// Compound error of a trapped-ion scenario.
    Ion {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 0.01)]
        base_error: f64,
        #[arg(long, default_value_t = 2.0)]
        embed_factor: f64,
        /// Per-gate angle multiples, comma separated.
        #[arg(long, value_delimiter = ',')]
        angles: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Decomposition {
    Barenco,
    Qudit,
}

#[derive(Subcommand)]
enum LibraryCommand {
    /// Controlled phase flip on n qubits.
    Cpf {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum)]
        decomposition: Option<Decomposition>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Grid cluster-state preparation.
    Cluster {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) | Error::DimensionCap { .. } => EXIT_INFEASIBLE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn read_circuit(path: &Path) -> Result<Circuit64, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Circuit64::from_json(&text).map_err(|e| Failure::from(e).with_context(path))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

impl Failure {
    fn with_context(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, partition } => {
            let c = read_circuit(&file)?;
            let opts = PipelineOptions { rewrite: false, ..partition.options() };
            let out = full_pipeline(&c, &opts)?;
            print!("{}", out.report.to_json());
        }
        Command::Compress { file, partition, merge, absorb_local, verify, tol, dims, output } => {
            let c = read_circuit(&file)?;
            let opts = PipelineOptions { merge, absorb_local, tol, dims, ..partition.options() };
            let out = full_pipeline(&c, &opts)?;
            let circuit = out.circuit.as_ref().expect("rewrite was requested");
            write_text(&output, &circuit.to_json())?;
            eprintln!("wrote {}", output.display());
            print!("{}", out.report.to_json());
            if verify {
                let v = &out.report.verification;
                match v.max_residual {
                    None => {
                        return Err(Failure {
                            code: EXIT_INFEASIBLE,
                            message: "verification requested but the register is too large to simulate".into(),
                        })
                    }
                    Some(r) if !(r < tol) => {
                        return Err(Failure {
                            code: EXIT_VERIFY,
                            message: format!("verification failed: residual {r:e} >= {tol:e}"),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Command::Verify { qubit, qudit, tol } => {
            let a = read_circuit(&qubit)?;
            let b = read_circuit(&qudit)?;
            let encoding = b
                .metadata
                .get("encoding")
                .ok_or_else(|| input_error(format!("{}: no encoding in metadata", qudit.display())))?;
            let encoding: Encoding = serde_json::from_value(encoding.clone())
                .map_err(|e| input_error(format!("{}: bad encoding: {e}", qudit.display())))?;
            let encoding = Encoding::new(encoding.groups().to_vec(), encoding.qudit_dims().to_vec())?;
            let eq = verify_equivalence(&circuit_unitary(&a)?, &circuit_unitary(&b)?, &encoding, tol)?;
            print_json(&json!({ "equal": eq.equal, "residual": eq.residual, "tol": tol }));
            if !eq.equal {
                return Err(Failure { code: EXIT_VERIFY, message: format!("circuits differ: residual {:e}", eq.residual) });
            }
        }
        Command::Estimate(EstimateCommand::Photonic { d1, d2 }) => {
            print_json(&json!({ "photonic": photonic_estimate(d1, d2)? }));
        }
        Command::Estimate(EstimateCommand::Ion { scenario, base_error, embed_factor, angles }) => {
            let s = ion_scenario(&scenario)?;
            let model = IonErrorModel { base_error, embed_factor };
            let est = ion_estimate(&s, &model, angles.as_deref())?;
            if est.error.is_none() {
                eprintln!("scenario {} has no angle multiples; pass --angles to get an error estimate", s.name);
            }
            print_json(&json!({ "ion": est }));
        }
        Command::Library(LibraryCommand::Cpf { n, decomposition, output }) => {
            let c = match (n, decomposition) {
                (2, None) => cz_circuit(),
                (4, None | Some(Decomposition::Barenco)) => cpf4_barenco_circuit().circuit,
                (_, Some(Decomposition::Barenco)) => {
                    return Err(input_error(format!("no two-qubit decomposition for n = {n}")))
                }
                (_, Some(Decomposition::Qudit)) => cpf_qudit_circuit(n)?,
                (_, None) => return Err(input_error(format!("n = {n} requires --decomposition qudit"))),
            };
            emit(&c, output.as_deref())?;
        }
        Command::Library(LibraryCommand::Cluster { rows, cols, output }) => {
            emit(&cluster_state_circuit::<f64>(rows, cols)?, output.as_deref())?;
        }
    }
    Ok(())
}

fn emit(c: &Circuit64, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            write_text(path, &c.to_json())?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", c.to_json()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
