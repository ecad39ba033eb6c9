//! `fermsig`: mode-level toolkit for the fermionic signature operator.

mod commands;
mod config;
mod output;
mod verify;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Exit codes: 0 success, 1 verification failure, 2 configuration error,
/// 3 numeric failure.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Runtime(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl From<fermsig_core::Error> for CliError {
    fn from(e: fermsig_core::Error) -> Self {
        match e {
            fermsig_core::Error::InvalidArgument(m) => CliError::Config(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fermsig",
    version,
    about = "Mode-level computations for the fermionic signature operator \
             in de Sitter and ultrastatic space-times"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration (built-in defaults when omitted)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dotted-path override, e.g. --set rtol=1e-8 (flag wins over file)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output path (overrides the config's output field; stdout by default)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve Cauchy data along each configured mode and tabulate the
    /// trajectory
    Evolve(RunArgs),
    /// Tabulate the signature matrix, its spectral split, and distances to
    /// the asymptotic frequency splittings
    Signature(RunArgs),
    /// Run the property suite and emit a machine-readable report
    Verify(RunArgs),
    /// Tabulate the in/out scattering matrices over the (lambda, m) grid
    Sweep(RunArgs),
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FERMSIG_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            CliError::config(format!("FERMSIG_THREADS must be a positive integer, got {raw:?}"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::runtime(format!("thread pool: {e}")))
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    init_threads()?;
    let (args, run): (&RunArgs, fn(&config::RunConfig, Option<&std::path::Path>) -> Result<i32, CliError>) =
        match &cli.command {
            Command::Evolve(a) => (a, commands::cmd_evolve),
            Command::Signature(a) => (a, commands::cmd_signature),
            Command::Verify(a) => (a, verify::cmd_verify),
            Command::Sweep(a) => (a, commands::cmd_sweep),
        };
    let cfg = config::load(args.config.as_deref(), &args.set)?;
    run(&cfg, args.out.as_deref())
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fermsig: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
