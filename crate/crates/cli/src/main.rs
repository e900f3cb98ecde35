//! `symmod`: tables, kernels and verification reports for the symmetric-group
//! decomposition of weighted Bergman modules on the polydisc.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on an invalid configuration (including exceeded size caps).

mod commands;
mod sink;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symmod::permgroup::Form;
use symmod::Error;

#[derive(Parser, Debug)]
#[command(name = "symmod", version, about = "Symmetric-group decomposition of weighted Bergman modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Number of variables.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Positive rational weight, e.g. `5/2`.
    #[arg(long, visible_alias = "mu", global = true, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    /// Degree cap for truncations.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = FormArg::Seminormal)]
    pub form: FormArg,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Number of random trials (points or weights) per check.
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of 𝔖ₙ.
    Chartable,
    /// Young's seminormal or orthogonal matrices for every partition of n.
    Irreps,
    /// Schur polynomials with at most n parts and size at most the degree.
    Schur,
    /// Truncated kernel series.
    Kernel {
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Runs the full verification suite.
    Verify,
    /// Compares the curvature of the symmetric and anti-symmetric parts.
    Curvature {
        /// JSON list of points in the polydisc; seeded points when absent.
        #[arg(long)]
        points: Option<String>,
        /// Finite-difference step.
        #[arg(long, default_value_t = symmod::geometry::DEFAULT_STEP)]
        step: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormArg {
    Seminormal,
    Orthogonal,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Seminormal => Form::Seminormal,
            FormArg::Orthogonal => Form::Orthogonal,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum KindArg {
    #[value(name = "Klambda")]
    Klambda,
    #[value(name = "Ksym")]
    Ksym,
    #[value(name = "KGn")]
    KGn,
    #[value(name = "BGn")]
    BGn,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Chartable => commands::chartable(&cli.common),
        Command::Irreps => commands::irreps(&cli.common),
        Command::Schur => commands::schur(&cli.common),
        Command::Kernel { kind } => commands::kernel(&cli.common, *kind),
        Command::Verify => commands::verify(&cli.common),
        Command::Curvature { points, step } => commands::curvature(&cli.common, points.as_deref(), *step),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", symmod::suite::error_json(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_)
        | Error::InvalidWeight(_)
        | Error::ResourceLimit { .. }
        | Error::IndexOutOfRange(_)
        | Error::Parse(_)
        | Error::Domain(_)
        | Error::InsufficientTruncation(_) => 2,
        Error::NotNormalizable | Error::Internal(_) => 1,
    }
}
