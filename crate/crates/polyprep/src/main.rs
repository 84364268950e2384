use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polyprep::circuit::{export_circuit, import_circuit, Role};
use polyprep::pipeline::{prepare_state, verify, PipelineOptions};
use polyprep::poly::{gqet_phases, parse_coefficients, Amplification, Polynomial};
use polyprep::sim::StateVector;
use polyprep::sweep::{doubling, scaling_sweep, SweepTarget};
use polyprep::Error;

#[derive(Parser)]
#[command(
    name = "polyprep",
    version,
    about = "Polynomial-amplitude state preparation circuits"
)]
struct Cli {
    /// Run every computation twice and fail unless the outputs are identical.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the preparation circuit and write it as JSON.
    Synthesize {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = AmpArg::Exact)]
        amplification: AmpArg,
        /// Also simulate and include fidelity in the report.
        #[arg(long)]
        simulate: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a circuit from |0…0⟩ and write the postselected system state.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a circuit against the normalized polynomial amplitudes.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        n: usize,
        /// Largest accepted infidelity.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Metrics sweep over n = min, 2·min, … ≤ max, written as CSV.
    Scaling {
        #[arg(long, default_value_t = 4)]
        min: usize,
        #[arg(long, default_value_t = 64)]
        max: usize,
        #[arg(long, value_enum, default_value_t = TargetArg::Depth)]
        target: TargetArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// GQSP phases for the eigenvalue transform of a polynomial.
    Phases {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PolyArgs {
    /// Comma-separated coefficients, lowest order first; complex as re±imj.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, value_enum, default_value_t = Basis::Monomial)]
    basis: Basis,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Monomial,
    Chebyshev,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmpArg {
    Exact,
    FixedPoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Depth,
    Size,
    SuccessProb,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroProbability | Error::CompletionResidual(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_poly(args: &PolyArgs) -> Result<Polynomial, Failure> {
    let coeffs = parse_coefficients(&args.poly)?;
    Ok(match args.basis {
        Basis::Monomial => Polynomial::new(coeffs),
        Basis::Chebyshev => Polynomial::from_chebyshev(&coeffs),
    })
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, contents)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// Output file contents (if any) and the text for stdout.
fn execute(command: &Command) -> Result<(Option<String>, String), Failure> {
    match command {
        Command::Synthesize {
            poly,
            n,
            epsilon,
            amplification,
            simulate,
            ..
        } => {
            let p = parse_poly(poly)?;
            let opts = PipelineOptions {
                amplification: match amplification {
                    AmpArg::Exact => Amplification::Exact,
                    AmpArg::FixedPoint => Amplification::FixedPoint,
                },
                simulate: *simulate,
            };
            let (c, report) = prepare_state(&p, *n, *epsilon, opts)?;
            Ok((Some(export_circuit(&c)), json(&report)))
        }
        Command::Simulate { circuit, .. } => {
            let c = import_circuit(&read(circuit)?)?;
            let mut s = StateVector::zero(c.width())?;
            s.apply_circuit(&c)?;
            let system = c.layout.get(Role::System);
            if system.is_empty() {
                return Ok((
                    Some(s.to_json()),
                    format!("{{\"success_probability\": 1.0, \"width\": {}}}", c.width()),
                ));
            }
            let amps = s.restrict(system);
            let success: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if success <= 0.0 {
                return Err(Error::ZeroProbability.into());
            }
            let out =
                StateVector::from_amplitudes(amps.iter().map(|a| a / success.sqrt()).collect())?;
            let summary = format!(
                "{{\"success_probability\": {success}, \"width\": {}}}",
                c.width()
            );
            Ok((Some(out.to_json()), summary))
        }
        Command::Verify {
            circuit,
            poly,
            n,
            tolerance,
        } => {
            let p = parse_poly(poly)?;
            let c = import_circuit(&read(circuit)?)?;
            let report = verify(&c, &p, *n)?;
            let fidelity = report.fidelity.unwrap_or(0.0);
            if fidelity < 1.0 - tolerance {
                return Err(Failure::Verification(format!(
                    "{}\nfidelity {fidelity} below 1 - {tolerance}",
                    json(&report)
                )));
            }
            Ok((None, json(&report)))
        }
        Command::Scaling {
            min, max, target, ..
        } => {
            let ns = doubling(*min, *max);
            let target = match target {
                TargetArg::Depth => SweepTarget::Depth,
                TargetArg::Size => SweepTarget::Size,
                TargetArg::SuccessProb => SweepTarget::SuccessProb,
            };
            let s = scaling_sweep(&ns, target)?;
            Ok((Some(s.to_csv()), json(&s.fit)))
        }
        Command::Phases { poly, .. } => {
            let p = parse_poly(poly)?.nonzero()?;
            let (phases, scaling, divisor) = gqet_phases(&p.chebyshev())?;
            let summary = format!(
                "{{\"degree\": {}, \"beta\": {}, \"divisor\": {divisor}}}",
                phases.degree(),
                scaling.beta
            );
            Ok((Some(phases.to_json()), summary))
        }
    }
}

fn out_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Synthesize { out, .. } | Command::Scaling { out, .. } => Some(out),
        Command::Simulate { out, .. } | Command::Phases { out, .. } => out.as_deref(),
        Command::Verify { .. } => None,
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (file, stdout) = execute(&cli.command)?;
    if cli.seedless {
        let again = execute(&cli.command)?;
        if again != (file.clone(), stdout.clone()) {
            return Err(Failure::Verification(
                "repeated run produced different output".into(),
            ));
        }
    }
    if let Some(contents) = file {
        match out_path(&cli.command) {
            Some(path) => write_atomic(path, &contents)?,
            None => println!("{contents}"),
        }
    }
    println!("{stdout}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
