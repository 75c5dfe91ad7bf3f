//! hblab: experiments in H(b) spaces from the command line.
//!
//! Every subcommand reads a flat JSON config (except `verify`, which can
//! run from presets alone), resolves grid overrides from flags and
//! HB_-prefixed environment variables, and writes report.csv plus
//! summary.txt into the output directory. Outputs are deterministic for a
//! fixed configuration and build.

mod config;
mod output;
mod runners;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Validation(String),
    Domain(String),
    VerifyFailed(usize),
}

impl CliError {
    fn label(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Domain(_) => "domain",
            CliError::VerifyFailed(_) => "verify",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Domain(_) => 4,
            CliError::VerifyFailed(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m)
            | CliError::Parse(m)
            | CliError::Validation(m)
            | CliError::Domain(m) => m.clone(),
            CliError::VerifyFailed(k) => format!("{k} verification checks failed"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "hblab",
    version,
    about = "Numerical experiments in de Branges-Rovnyak spaces H(b)"
)]
struct Cli {
    /// Path to a flat JSON experiment config
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for report.csv and summary.txt
    #[arg(long, global = true, default_value = "./out")]
    out: PathBuf,

    /// Grid size N (power of two in [1024, 65536]); overrides config and env
    #[arg(long, global = true)]
    grid_size: Option<usize>,

    /// Seed for the randomized checks in the verify suite
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Also write debug/*.csv dumps where the subcommand has them
    #[arg(long, global = true)]
    debug: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite over named presets
    Verify {
        /// Presets to check, e.g. half-one-plus-z rz(0.5); empty list from
        /// both here and the config produces an empty table
        presets: Vec<String>,
    },
    /// Compute the Pythagorean mate of the symbol
    Mate,
    /// Lift a function into H(b): f+, the boundary witness g, and the norm
    Lift,
    /// Build a reproducing kernel element at a point
    Kernel,
    /// Clark density, total / absolutely continuous / singular masses
    Clark,
    /// Cyclicity residuals min over polynomial multiples of degree d
    Cyclicity,
    /// Completeness experiment for the family { a k_lambda }
    Completeness,
    /// Classify cyclicity of 1 - cb
    Classify,
    /// Lacunary approximant bound check for z^n
    Gr,
}

impl Command {
    fn kind(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Mate => "mate",
            Command::Lift => "lift",
            Command::Kernel => "kernel",
            Command::Clark => "clark",
            Command::Cyclicity => "cyclicity",
            Command::Completeness => "completeness",
            Command::Classify => "classify",
            Command::Gr => "gr",
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let kind = cli.command.kind();
    if cli.config.is_none() && kind != "verify" {
        return Err(CliError::Validation(format!(
            "{kind} requires --config <path>"
        )));
    }
    let cfg = config::load(cli.config.as_deref())?;
    let res = config::resolve(kind, cfg, cli.grid_size, cli.seed)?;

    match &cli.command {
        Command::Verify { presets } => {
            let failed = runners::run_verify(&res, &cli.out, presets)?;
            if failed > 0 {
                return Err(CliError::VerifyFailed(failed));
            }
            Ok(())
        }
        Command::Mate => runners::run_mate(&res, &cli.out, cli.debug),
        Command::Lift => runners::run_lift(&res, &cli.out, cli.debug),
        Command::Kernel => runners::run_kernel(&res, &cli.out),
        Command::Clark => runners::run_clark(&res, &cli.out, cli.debug),
        Command::Cyclicity => runners::run_cyclicity(&res, &cli.out),
        Command::Completeness => runners::run_completeness(&res, &cli.out),
        Command::Classify => runners::run_classify(&res, &cli.out),
        Command::Gr => runners::run_gr(&res, &cli.out),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {}: {}", err.label(), err.message());
        std::process::exit(err.exit_code());
    }
}
