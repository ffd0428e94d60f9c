//! Experiment command-line driver: integration-matrix checks, quadrature
//! convergence sweeps, jump-detection tables, and full predictor-corrector
//! solves with machine-readable output.

mod commands;
mod output;

use clap::{Parser, Subcommand};

/// Exit codes: 0 success, 2 validation failure, 3 numerical-check failure,
/// 4 solver non-convergence.
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;

#[derive(Parser)]
#[command(name = "specperiod", version, about = "Periodic chemostat optimal-control experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Fourier integration matrix, verify its structure, and
    /// optionally compare fast vs naive construction time.
    Fim(commands::fim::FimArgs),
    /// Quadrature convergence sweeps over the test corpus (error norms and
    /// fitted slopes as CSV).
    Quad(commands::quad::QuadArgs),
    /// Jump detection and reconstruction error tables over the corpus.
    Edges(commands::edges::EdgesArgs),
    /// Full predictor-corrector solve of a chemostat dataset.
    Solve(commands::solve::SolveArgs),
}

fn main() {
    // A thread cap applies to every parallel sweep.
    if let Ok(v) = std::env::var("SPECPERIOD_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global()
                    .expect("rayon pool already initialized");
            }
            _ => {
                eprintln!("error: SPECPERIOD_THREADS must be a positive integer, got {v:?}");
                std::process::exit(EXIT_VALIDATION);
            }
        }
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Fim(args) => commands::fim::run(args),
        Command::Quad(args) => commands::quad::run(args),
        Command::Edges(args) => commands::edges::run(args),
        Command::Solve(args) => commands::solve::run(args),
    };
    match code {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(EXIT_VALIDATION);
        }
    }
}
