//! `rupert`: search, verify and analyse passages of polyhedra through
//! themselves.
//!
//! Exit codes: 0 success, 1 usage error or bad input, 2 no solution found or
//! verification failed, 3 I/O error. Data goes to stdout, diagnostics to
//! stderr.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rupert_core::Error;

#[derive(Parser, Debug)]
#[command(name = "rupert", version, about = "Rupert's problem for convex polyhedra")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// A catalog name (`cube`, `truncated-octahedron`, ...) or a polyhedron JSON
/// file. `--recenter` shifts a file's centroid to the origin.
#[derive(Args, Debug, Clone)]
pub struct SolidArg {
    pub solid: String,
    #[arg(long)]
    pub recenter: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OutArg {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the built-in solids.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Search for a solution.
    Solve {
        #[command(flatten)]
        solid: SolidArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Projections per batch.
        #[arg(long, default_value_t = 100)]
        batch: usize,
        #[arg(long, default_value_t = 200)]
        max_batches: usize,
        /// Draw all seven parameters at random instead.
        #[arg(long)]
        naive: bool,
        /// Rotation samples per projection pair.
        #[arg(long)]
        samples: Option<usize>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check a solution (margin > 0), or every shipped golden solution.
    Verify {
        /// Overrides the solid named in the solution file.
        solid: Option<String>,
        #[arg(long, required_unless_present = "all_goldens")]
        solution: Option<PathBuf>,
        #[arg(long, conflicts_with = "solution")]
        all_goldens: bool,
        #[arg(long, default_value = "goldens")]
        goldens_dir: PathBuf,
        #[arg(long)]
        recenter: bool,
    },
    /// The largest scale μ for which a solution still works.
    Nieuwland {
        solid: Option<String>,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, default_value_t = rupert_core::nieuwland::DEFAULT_MU_ITERS)]
        iters: usize,
        #[arg(long)]
        recenter: bool,
    },
    /// Hill-climb μ from a given solution, or from fresh solutions.
    Improve {
        #[command(flatten)]
        solid: SolidArg,
        /// Starting solution; without it each start solves first.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent starts, run in parallel; the best is reported.
        #[arg(long, default_value_t = 1)]
        starts: usize,
        /// Seconds per start.
        #[arg(long, default_value_t = 60.0)]
        time_budget: f64,
        #[arg(long, default_value_t = 1_000_000)]
        rounds: u64,
        /// Stop once μ reaches this.
        #[arg(long)]
        target_mu: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Monte-Carlo estimate of the Rupertness with an exact confidence interval.
    Rupertness {
        #[command(flatten)]
        solid: SolidArg,
        #[arg(short = 'n', long, default_value_t = 100_000)]
        trials: u64,
        /// Significance level; the interval has confidence 1 - alpha.
        #[arg(long, default_value_t = 0.001)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = rupert_core::containment::DEFAULT_ROTATION_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutArg,
    },
    /// Polynomial inequality system for one outer silhouette.
    EmitSystem {
        /// Solid with integer (or, with --integerize, rational) coordinates;
        /// `-` reads a polyhedron JSON from stdin. Omit with --algebraic.
        solid: Option<String>,
        /// 1-based cycle such as `1,2,3`.
        #[arg(long, conflicts_with = "angles")]
        silhouette: Option<String>,
        /// Take the silhouette seen from `theta,phi`.
        #[arg(long, allow_hyphen_values = true)]
        angles: Option<String>,
        /// Scale rational coordinates with denominators up to this bound.
        #[arg(long)]
        integerize: Option<u64>,
        /// JSON file with symbolic coordinates:
        /// {"vertices": [["x","y","z"], ...], "variables": [...], "min_polys": [...]}.
        #[arg(long, conflicts_with_all = ["solid", "integerize"])]
        algebraic: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Count the silhouettes seen from random directions.
    DiscoverSilhouettes {
        #[command(flatten)]
        solid: SolidArg,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a solution as SVG.
    Render {
        solid: Option<String>,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        #[arg(long)]
        recenter: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn negative(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NotFound | Error::InvalidSolution(_) => 2,
            Error::Io(_) => 3,
            _ => 1,
        };
        Self { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Self { code: 3, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("rupert: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rupert: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
