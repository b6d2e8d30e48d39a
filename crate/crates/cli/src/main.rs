mod args;
mod commands;
mod reproduce;
mod write;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{parse_grid, parse_list, parse_range, Detunings, Format, ParityArg, Tolerances};

/// Dark states of the two-qubit quantum Rabi model.
///
/// Exit status: 0 on success, 1 when a computation fails, 2 on invalid
/// input.
#[derive(Debug, Parser)]
#[command(name = "tqrabi", version)]
struct Cli {
    /// Worker threads for grid points and ladders; 1 runs serially. Output
    /// is identical for any value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Converged window spectrum over a coupling grid, as CSV.
    Spectrum {
        #[command(flatten)]
        detunings: Detunings,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        /// Coupling grid start:stop:count (g₁ = g₂ = g).
        #[arg(long, value_parser = parse_grid)]
        g: args::Values,
        /// Energy window lo:hi, units of ω.
        #[arg(long, value_parser = parse_range, default_value = "-2:6", allow_hyphen_values = true)]
        window: (f64, f64),
        #[command(flatten)]
        tol: Tolerances,
        /// Report whether this energy is present at every grid point.
        #[arg(long, value_parser = args::parse_finite)]
        flat: Option<f64>,
        /// Tolerance of the --flat check, units of ω.
        #[arg(long, default_value_t = 1e-9, value_parser = args::parse_finite)]
        tol_flat: f64,
        /// Output CSV path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a gnuplot script beside --out.
        #[arg(long, requires = "out")]
        gnuplot: bool,
    },
    /// Exact secular polynomial in a = Δ₁−Δ₂, b = Δ₁+Δ₂, g.
    Secular {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Couplings at which an N-photon dark state exists for given detunings.
    Conditions {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[arg(long, value_parser = args::parse_finite, allow_hyphen_values = true)]
        delta1: f64,
        #[arg(long, value_parser = args::parse_finite, allow_hyphen_values = true)]
        delta2: f64,
    },
    /// Dark-state amplitudes at a root of the existence condition, as JSON.
    Darkstate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[command(flatten)]
        detunings: Detunings,
        /// Coupling; defaults to the root selected by --root.
        #[arg(long, value_parser = args::parse_finite)]
        g: Option<f64>,
        /// Index of the ascending root used when --g is absent.
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Detunings admitting a dark state at every coupling.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
    },
    /// Large-coupling dark-state detunings for odd N ≥ 5, with a flatness
    /// check along a coupling ladder.
    Asymptotic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        /// Search range of Δ₁.
        #[arg(long, value_parser = parse_range, default_value = "0:10", allow_hyphen_values = true)]
        box_delta1: (f64, f64),
        /// Search range of Δ₂.
        #[arg(long, value_parser = parse_range, default_value = "0:10", allow_hyphen_values = true)]
        box_delta2: (f64, f64),
        /// Newton starts when no exact elimination applies.
        #[arg(long, default_value_t = 64)]
        starts: usize,
        /// Seed of the start sampler.
        #[arg(long, default_value_t = 0x5eed_2a5e)]
        seed: u64,
        /// Couplings at which flatness is checked.
        #[arg(long, value_parser = parse_list, default_value = "2,4,6,8,10")]
        ladder: args::Values,
        /// Skip the diagonalization ladder.
        #[arg(long)]
        no_verify: bool,
        /// Cutoff-doubling convergence tolerance, units of ω.
        #[arg(long, default_value_t = 1e-8, value_parser = args::parse_finite)]
        tol_converge: f64,
        /// Hard cap on the photon cutoff (deep displaced-well levels need
        /// cutoffs near (√(E+4g²)+2g)²).
        #[arg(long, default_value_t = 16384)]
        cap: usize,
    },
    /// Minimal gap between the two levels straddling an energy.
    Gap {
        #[command(flatten)]
        detunings: Detunings,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        /// Coupling bracket lo:hi holding one local minimum.
        #[arg(long, value_parser = parse_range)]
        bracket: (f64, f64),
        /// Target energy, units of ω; implied by --special-n3 / --n5-asymptotic.
        #[arg(long, value_parser = args::parse_finite, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Photon-number distribution of the eigenstate nearest an energy, as CSV.
    Populations {
        #[command(flatten)]
        detunings: Detunings,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[arg(long, value_parser = args::parse_finite)]
        g: f64,
        /// Target energy, units of ω; implied by --special-n3 / --n5-asymptotic.
        #[arg(long, value_parser = args::parse_finite, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[command(flatten)]
        tol: Tolerances,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a figure or table: data files plus gnuplot scripts.
    Reproduce {
        #[arg(value_enum)]
        target: reproduce::Target,
        /// Directory receiving the generated files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl From<tqrabi::Error> for CliError {
    fn from(e: tqrabi::Error) -> Self {
        match e {
            tqrabi::Error::InvalidParameter(_) | tqrabi::Error::InvalidParity(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(format!("I/O error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Compute(format!("serialization error: {e}"))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let exec = if cli.jobs > 1 {
        tqrabi::Execution::Parallel
    } else {
        tqrabi::Execution::Serial
    };
    let result = tqrabi::exec::with_threads(cli.jobs, || commands::run(cli.command, exec));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
