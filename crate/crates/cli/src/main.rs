use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fibertorque::coupling::DEFAULT_TOL;
use fibertorque_cli::{execute, load_config, CliError, Verb};

#[derive(Parser)]
#[command(name = "fibertorque", version, about = "Torques of nanofiber-guided light on a two-level atom")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Relative tolerance of the radiation-mode quadrature.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output file (or directory for plot data); overrides output.path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Steady-state torques over a radial grid.
    ScanTorque { config: PathBuf },
    /// Angular-momentum densities and per-photon values of the drive modes.
    AmAnalysis { config: PathBuf },
    /// Guided modes with propagation constants and cutoffs.
    Modes { config: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(CliError::config(None, "--tol", format!("must lie in (0, 1), got {}", cli.tol)));
    }
    let (verb, path) = match cli.command {
        Command::ScanTorque { config } => (Verb::ScanTorque, config),
        Command::AmAnalysis { config } => (Verb::AmAnalysis, config),
        Command::Modes { config } => (Verb::Modes, config),
    };
    let cfg = load_config(&path)?;
    execute(verb, &cfg, cli.tol, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fibertorque: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
