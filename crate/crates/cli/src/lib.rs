//! Command-line front end for the `ghz-chsh` library.
//!
//! Every subcommand prints one report with a [`RunManifest`], a `passed` flag
//! and a command-specific `result` object. The process exits with 0 when the
//! command's checks passed, 1 when one failed, and with the codes of
//! [`CliError::exit_code`] when it could not run.

pub mod commands;
pub mod config;
mod error;
pub mod report;
pub mod strategy;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ghz_chsh::degeneracy::CanonicalCase;
use ghz_chsh::games::Game;

pub use error::CliError;
pub use report::{Format, Report, RunManifest};
use strategy::StrategySpec;

#[derive(Debug, Parser)]
#[command(name = "ghz-chsh", version, about = "N-qubit CHSH inequality on the GHZ state")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for the parallel parts of a command.
    #[arg(long, env = "BELL_THREADS", default_value_t = 1, global = true,
          value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,

    /// Record `wall_time_ms` as 0 so identical inputs give identical bytes.
    #[arg(long, global = true)]
    pub reproducible: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ⟨G|I^N|G⟩ by the closed form and by the operator.
    Eval { config: PathBuf },
    /// Reduce a configuration to two qubits and compare the two values.
    Reduce { config: PathBuf },
    /// Degenerate 2√2 eigenspace of a canonical saturating configuration.
    Degeneracy {
        /// Canonical family, 1 or 5.
        #[arg(long, value_parser = parse_case)]
        case: CanonicalCase,
        #[arg(long)]
        n: usize,
        /// Comma-separated equatorial angles of setting 1 for case 5.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi_primes: Option<Vec<f64>>,
    },
    /// Exact and sampled values of the CHSH and CHSH* games.
    Game {
        /// identity, optimal or file:<path>.
        #[arg(long, value_parser = parse_strategy)]
        strategy: StrategySpec,
        /// Game to sample, chsh or chsh_star.
        #[arg(long, value_parser = parse_game, default_value = "chsh")]
        game: Game,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Random search for configurations where i_2 < i_n after a violation.
    Scan {
        /// Comma-separated qubit counts.
        #[arg(long = "n", value_delimiter = ',', default_value = "3,4")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The four-qubit reference configuration and its four degenerate states.
    ExampleN4,
}

fn parse_case(s: &str) -> Result<CanonicalCase, String> {
    s.parse().map_err(|e: ghz_chsh::Error| e.to_string())
}

fn parse_game(s: &str) -> Result<Game, String> {
    s.parse().map_err(|e: ghz_chsh::Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<StrategySpec, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Reduce { .. } => "reduce",
            Command::Degeneracy { .. } => "degeneracy",
            Command::Game { .. } => "game",
            Command::Scan { .. } => "scan",
            Command::ExampleN4 => "example-n4",
        }
    }
}

/// Runs a parsed command line on a pool of `cli.threads` workers.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(cli.threads))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let outcome = pool.install(|| match &cli.command {
        Command::Eval { config } => commands::eval(config),
        Command::Reduce { config } => commands::reduce(config),
        Command::Degeneracy { case, n, phi_primes } => commands::degeneracy(*case, *n, phi_primes.as_deref()),
        Command::Game { strategy, game, shots, seed } => commands::game(strategy, *game, *shots, *seed),
        Command::Scan { n_list, samples, seed } => {
            let samples = usize::try_from(*samples).map_err(|e| CliError::Usage(e.to_string()))?;
            commands::scan(n_list, samples, *seed)
        }
        Command::ExampleN4 => commands::example_n4(),
    })?;
    let wall_time_ms = if cli.reproducible { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(Report {
        manifest: RunManifest {
            command: cli.command.name().to_owned(),
            config_digest: report::digest(&outcome.input),
            seed: outcome.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            wall_time_ms,
        },
        passed: outcome.passed,
        result: outcome.result,
    })
}
