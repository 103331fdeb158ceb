use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tqlab_cli::{cmd_dump, cmd_spectrum, cmd_tq, cmd_verify, CliError, Outcome, RunConfig};

/// Verification laboratory for the Baxter TQ relation of the open XXZ chain.
///
/// Exit codes: 0 all pass, 1 identity failure, 2 configuration error,
/// 3 computation error.  Log level from `TQLAB_LOG` (default `warn`).
#[derive(Parser)]
#[command(name = "tqlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected identity suites and write a verification report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated identity-id globs, e.g. `lax.*,bnd.refeq*`.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Check the TQ relation and commutativity at seeded spectral points.
    Tq {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Write one operator in the matrix dump format.
    Dump {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        object: String,
        /// Spectral parameter, written as `re+imj`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Joint T/Q spectrum with per-eigenpair TQ residuals.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        /// `none`, `circle:R:n`, `line:a:b:n` or `list:z1,z2,...`.
        #[arg(long)]
        grid: String,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify { config, suite } => cmd_verify(&RunConfig::load(&config).map_err(CliError::Config)?, suite.as_deref()),
        Command::Tq { config, points } => cmd_tq(&RunConfig::load(&config).map_err(CliError::Config)?, points),
        Command::Dump { config, object, x } => Ok(cmd_dump(&RunConfig::load(&config).map_err(CliError::Config)?, &object, &x)?.0),
        Command::Spectrum { config, grid } => cmd_spectrum(&RunConfig::load(&config).map_err(CliError::Config)?, &grid),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("TQLAB_LOG", "warn")).init();
    let code = match run(Cli::parse()) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
