//! The `esgame` command line.
//!
//! Exit codes: 0 when the command succeeds or the property holds, 1 when
//! it fails (the counterexample goes to standard output), 2 for invalid
//! input and 3 when an enumeration guard is exceeded.

mod commands;
pub mod suite;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use esgame_core::laws::FibrationOrder;

/// Concurrent games and strategies on finite event structures.
#[derive(Debug, Parser)]
#[command(name = "esgame", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where a produced document goes; `-` is standard output.
#[derive(Debug, Args)]
pub struct Output {
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a document.
    Validate {
        file: PathBuf,
        /// Also write the value as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the configurations.
    Configs {
        file: PathBuf,
        /// Also list the covering steps.
        #[arg(long)]
        covers: bool,
        /// Write the configuration lattice as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Parallel composition; events are prefixed `0.` and `1.`.
    Parallel {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Swap polarities.
    Dual {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Restrict to a set of events.
    Project {
        file: PathBuf,
        /// Comma-separated ids to keep.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Copycat strategy on a game.
    Copycat {
        game: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Interaction of two strategies, or pullback of two maps into one structure.
    Interact {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Composition `τ ⊙ σ` of `σ : A ⊸ B` and `τ : B ⊸ C`.
    Compose {
        sigma: PathBuf,
        tau: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Check a law on a pre-strategy; without a flag, whether it is a strategy.
    Check {
        file: PathBuf,
        #[arg(long, group = "law")]
        receptive: bool,
        #[arg(long, group = "law")]
        courteous: bool,
        /// Discrete fibration over `neg`, `pos` or `scott`.
        #[arg(long, group = "law", value_name = "VARIANT")]
        fibration: Option<FibrationOrder>,
        /// Every characterisation, with a consistency check.
        #[arg(long, group = "law")]
        strategy: bool,
    },
    /// Isomorphism of two structures, esps or pre-strategies.
    Iso {
        left: PathBuf,
        right: PathBuf,
        /// Require both pre-strategies to be on this game.
        #[arg(long)]
        over: Option<PathBuf>,
    },
    /// Tensor of two strategies.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Lift a receptive, courteous map between esps to a strategy.
    Lift {
        map: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Both snake equations on a game.
    Snake { game: PathBuf },
    /// Mac Lane's pentagon on four composable strategies.
    Pentagon {
        #[arg(num_args = 4, required = true)]
        strategies: Vec<PathBuf>,
    },
    /// Seeded random documents.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// An esp with this many events.
        #[arg(long, group = "what")]
        events: Option<usize>,
        /// A pre-strategy on this game.
        #[arg(long, group = "what", value_name = "GAME")]
        prestrategy: Option<PathBuf>,
        /// A strategy from the closed family.
        #[arg(long, group = "what")]
        family: bool,
        /// Game size for `--family`.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the seeded law suites and print a summary table.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Event bound for random games and pre-strategies.
        #[arg(long, default_value_t = 6)]
        max_events: usize,
    },
}

/// Exit code of a finished command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Doc(#[from] esgame_io::DocError),
    #[error(transparent)]
    Core(#[from] esgame_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

impl CliError {
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        let guard = match self {
            CliError::Doc(e) => e.is_guard(),
            CliError::Core(e) => e.is_guard(),
            _ => false,
        };
        if guard {
            3
        } else {
            2
        }
    }
}

/// Parse `argv` (program name first) and run; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(cli.command) {
        Ok(Status::Holds) => 0,
        Ok(Status::Fails) => 1,
        Err(e) => {
            eprintln!("esgame: {e}");
            e.exit_code()
        }
    }
}
