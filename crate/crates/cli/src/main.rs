//! `trapping`: average trapping time analysis for edge-list graphs.
//!
//! Exit codes: 0 on success, 2 for input or validation errors, 3 when a
//! numerical computation fails.

mod analyze;
mod bounds;
mod dominate;
mod error;
mod generate;
mod scaling;
mod sidecar;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "trapping",
    version,
    about = "Average trapping time of random walks with a single trap"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact ATT, lower bound and Kemeny's constant for a trap.
    Analyze(analyze::AnalyzeArgs),
    /// Write a graph from a builtin family as an edge list.
    Generate(generate::GenerateArgs),
    /// Compare star-type bounds with the exact ATT.
    Bounds(bounds::BoundsArgs),
    /// Hub-trap ATT growth on preferential-attachment graphs.
    Scaling(scaling::ScalingArgs),
    /// Dominating-set check and per-vertex trap optimality.
    Dominate(dominate::DominateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze::run(a),
        Command::Generate(a) => generate::run(a),
        Command::Bounds(a) => bounds::run(a),
        Command::Scaling(a) => scaling::run(a),
        Command::Dominate(a) => dominate::run(a),
    };
    match result {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
