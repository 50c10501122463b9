//! `dirac-susy`: partner potentials, isospectral families, Dirac levels,
//! Witten index and Pöschl–Teller tables from the command line.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{read_file, resolve, Overrides};
use crate::error::CliError;

#[derive(Parser)]
#[command(name = "dirac-susy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat TOML file with the same keys as the flags (flags win)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Partner potentials V∓ = f² ∓ f' and the zero mode
    Partners,
    /// Isospectral family F, Ṽ, ψ̃₀ for each λ
    Family,
    /// Dirac levels ω and spinor components, undeformed and per λ
    Dirac,
    /// Regularized Witten index Δ(β), analytic and from box spectra
    Index,
    /// ℓ tanh x ladder against Pöschl–Teller, and singularity regimes
    Pt,
}

fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let file = cli.config.as_deref().map(read_file).transpose()?;
    let cfg = resolve(cli.overrides, file)?;
    match cli.command {
        Command::Partners => commands::partners(&cfg),
        Command::Family => commands::family(&cfg),
        Command::Dirac => commands::dirac(&cfg),
        Command::Index => commands::index(&cfg),
        Command::Pt => commands::pt(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(files) => {
            for f in files {
                println!("{f}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
