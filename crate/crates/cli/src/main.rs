//! `spectramark`: spectral centrality analysis and verification from the
//! command line.

mod analyze;
mod coupling;
mod figures;
mod input;
mod output;
mod verify;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

/// Exit status when a verification check fails.
const EXIT_FAILED: u8 = 1;
/// Exit status for usage and input errors.
const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "spectramark", version, about = "Spectral centrality analysis of undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, squared eigenvector components, weights and a bound summary.
    Analyze(analyze::AnalyzeArgs),
    /// Run every identity and bound check; exit 1 on any failure.
    Verify(verify::VerifyArgs),
    /// Sample c_A(x) and every node-deleted c_A\{j}(x) on a grid.
    Polynomials(figures::PolynomialArgs),
    /// Squared eigenvector components per node with the normalized degree.
    CentralityGrid(figures::GridArgs),
    /// Generate a graph.
    Gen(input::GenArgs),
    /// Eigenvector overlap with the complement graph.
    Complement(coupling::ComplementArgs),
}

/// Caps rayon's pool at `SPECTRAMARK_THREADS` when it is set.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("SPECTRAMARK_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("SPECTRAMARK_THREADS must be a positive integer, got '{raw}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    match &cli.command {
        Command::Analyze(a) => analyze::cmd_analyze(a).map(|_| true),
        Command::Verify(a) => verify::cmd_verify(a),
        Command::Polynomials(a) => figures::cmd_polynomials(a).map(|_| true),
        Command::CentralityGrid(a) => figures::cmd_centrality_grid(a).map(|_| true),
        Command::Gen(a) => input::cmd_gen(a).map(|_| true),
        Command::Complement(a) => coupling::cmd_complement(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
