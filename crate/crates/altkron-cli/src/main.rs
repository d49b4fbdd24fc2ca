//! Drives the exact checkers from the command line and prints one JSON
//! report per run.  Exit code 0 means every check passed, 1 means a check
//! or construction precondition failed, 2 means the inputs themselves were
//! unusable (missing files, bad JSON, bad arguments).
//!
//! Reports are byte-identical across runs unless `--timings` is given.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

mod check;
mod construct;
mod coordinatize;
mod plucker_cmd;
mod report;

/// Error carrying the process exit code it maps to.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    /// Unusable input: missing file, malformed JSON, bad argument value.
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    /// Violated precondition: the inputs parse but the mathematics refuses them.
    pub fn precondition(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

#[derive(Parser)]
#[command(name = "altkron", version, about = "Exact checks for alternative algebras built from a coefficient ring, a module, and a skew pairing")]
struct Cli {
    /// Directory for artifact files (report.json plus any constructed data).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include per-check wall-clock times in the report.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the alternativity sweep and any requested named identities on a table.
    Check {
        /// Path to an algebra table file.
        algebra: PathBuf,

        /// Identity to check, repeatable; see the library for the known names.
        #[arg(long = "identity")]
        identities: Vec<String>,

        /// Either "basis" or "random:<trials>:<seed>".
        #[arg(long, default_value = "basis")]
        mode: String,
    },

    /// Build one of the stock algebras and verify it on the spot.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },

    /// Recover the coefficient ring, module, and pairing from a table with chosen matrix units.
    Coordinatize {
        /// Path to an algebra table file.
        algebra: PathBuf,

        /// Path to a matrix units file for that table.
        #[arg(long)]
        units: PathBuf,
    },

    /// Work with quadratic relation families.
    Plucker {
        #[command(subcommand)]
        action: PluckerAction,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Eight-dimensional algebra doubled from the two-by-two matrices.
    Octonion {
        /// "rationals" or a path to a commutative associative table.
        #[arg(long, default_value = "rationals")]
        base: String,

        /// Square of the doubling generator, a scalar; defaults to 1.
        #[arg(long)]
        v2: Option<String>,
    },

    /// Doubling of two-by-two matrices over a commutative base ring.
    Cd {
        #[arg(long, default_value = "rationals")]
        base: String,

        /// Central element scaling the doubling, as a basis name or comma list of coordinates.
        #[arg(long)]
        alpha: String,
    },

    /// Doubling that keeps a noncommutative base, with its commutative quotient.
    Ncd {
        #[arg(long, default_value = "rationals")]
        base: String,

        #[arg(long)]
        alpha: String,
    },

    /// Split extension of the two-by-two matrices by a module with zero pairing.
    Nullext {
        /// Only "rationals" is supported here.
        #[arg(long, default_value = "rationals")]
        base: String,
    },

    /// Algebra generated by a module with three generators over the base ring.
    Threegen {
        #[arg(long, default_value = "rationals")]
        base: String,

        /// Three scalar tuples "a,b;c,d;e,f", each of the base ring's dimension.
        #[arg(long)]
        gens: String,
    },

    /// Build directly from a spec file of coefficient ring, action, and pairing.
    Fromspec {
        /// Path to a spec file.
        #[arg(long)]
        spec: PathBuf,

        /// Build even when the pairing fails validation.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Subcommand)]
enum PluckerAction {
    /// Print the determinant family in n planar vectors as a family file.
    Grassmann {
        #[arg(long)]
        n: usize,
    },

    /// Check the quadruple relations on a family file.
    Check {
        /// Path to a family file.
        family: PathBuf,

        /// Use the variant with the transposed middle term instead of the standard form.
        #[arg(long = "middle-lk")]
        middle_lk: bool,
    },

    /// Certify that the first 2n-3 determinant entries are independent.
    Independence {
        #[arg(long)]
        n: usize,

        /// Random points to try before giving up.
        #[arg(long, default_value_t = 5)]
        trials: usize,

        #[arg(long)]
        seed: u64,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("ALTKRON_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("ALTKRON_THREADS must be a positive integer, got {raw:?}")))?;
    if threads == 0 {
        return Err(CliError::input("ALTKRON_THREADS must be a positive integer"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::input(format!("cannot configure the worker pool: {e}")))
}

fn run() -> i32 {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        return e.code;
    }
    let out = cli.out.as_deref();
    let outcome = match cli.command {
        Command::Check { algebra, identities, mode } => {
            check::run(&algebra, &identities, &mode, out, cli.timings)
        }
        Command::Construct { kind } => construct::run(kind, out, cli.timings),
        Command::Coordinatize { algebra, units } => {
            coordinatize::run(&algebra, &units, out, cli.timings)
        }
        Command::Plucker { action } => plucker_cmd::run(action, out, cli.timings),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn main() {
    std::process::exit(run());
}
