//! `nlgap`: runs the Poincaré-constant experiments from the command line.
//!
//! Exit status: 0 when every check passes, 1 on a runtime error, 2 when a
//! property check fails.

mod commands;
mod error;
mod input;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{embed, gamma, generate, model};
use error::{CliError, Result};
use report::{write_output, Report};

#[derive(Debug, Parser)]
#[command(name = "nlgap", version, about = "Nonlinear spectral gap experiments on regular graphs")]
struct Cli {
    /// Master seed; every random choice derives from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (standard output when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Poincaré constant of a graph into a metric, exact or lower bound.
    Gamma(gamma::GammaArgs),
    /// Compare constants at two exponents against the extrapolation bounds.
    Extrapolate(gamma::ExtrapolateArgs),
    /// Check the bound for maps that are not concentrated.
    Nonconc(gamma::NonconcArgs),
    /// Coordinate map certifying a large constant into a sup-norm grid.
    Witness(embed::WitnessArgs),
    /// Random distance-to-subset embedding into a sup-norm grid.
    JlsEmbed(embed::JlsArgs),
    /// Distortion of a given map.
    Distort(embed::DistortArgs),
    /// Monte Carlo checks of the random graph model lemmas.
    Model(model::ModelArgs),
    /// Second eigenvalues of random regular graphs.
    Spectra(generate::SpectraArgs),
    /// Write a graph file.
    GenGraph(generate::GenGraphArgs),
    /// Write a metric file.
    GenMetric(generate::GenMetricArgs),
}

/// What a subcommand produces.
pub enum Output {
    Report(Report),
    /// A data file (graph or metric) with its own `#` header.
    Text(String),
}

/// Options shared by all subcommands.
pub struct Ctx {
    pub seed: Option<u64>,
}

impl Ctx {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("NLGAP_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Threads { value: value.clone(), message: "expected a positive integer".into() })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Threads { value, message: e.to_string() })
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let ctx = Ctx { seed: cli.seed };
    let start = Instant::now();
    let output = match cli.command {
        Command::Gamma(a) => gamma::gamma(&ctx, a)?,
        Command::Extrapolate(a) => gamma::extrapolate(&ctx, a)?,
        Command::Nonconc(a) => gamma::nonconc(&ctx, a)?,
        Command::Witness(a) => embed::witness(&ctx, a)?,
        Command::JlsEmbed(a) => embed::jls(&ctx, a)?,
        Command::Distort(a) => embed::distort(&ctx, a)?,
        Command::Model(a) => model::model(&ctx, a)?,
        Command::Spectra(a) => generate::spectra(&ctx, a)?,
        Command::GenGraph(a) => generate::gen_graph(&ctx, a)?,
        Command::GenMetric(a) => generate::gen_metric(&ctx, a)?,
    };
    match output {
        Output::Report(r) => {
            r.emit(cli.out.as_deref(), start.elapsed())?;
            Ok(!r.failed)
        }
        Output::Text(t) => {
            write_output(cli.out.as_deref(), &t)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("nlgap: property check failed (see report)");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("nlgap: error: {e}");
            ExitCode::from(1)
        }
    }
}
