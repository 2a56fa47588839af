mod commands;
mod settings;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use settings::Settings;

/// Numerical experiments on the boundary behaviour of bounded analytic
/// functions in the unit disc, and a raster Arakeljan-set classifier.
#[derive(Parser, Debug)]
#[command(name = "boundarylab", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output path; `-` writes to standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// Worker threads (0 = one per core). Output does not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// key = value file overriding the built-in defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Tolerance override `name=value`; names: verdict, truncation,
    /// quadrature, series, divergence, cauchy, delta. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

/// Where the function under study comes from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Zero list or generator, JSON.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Product of Blaschke, singular, outer and series factors, JSON.
    #[arg(long)]
    inner: Option<PathBuf>,
    /// This many seeded random zeros with modulus below 0.99.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
}

/// A function source plus how Blaschke products are truncated.
#[derive(Args, Debug, Clone)]
pub struct FunctionArgs {
    #[command(flatten)]
    source: Source,
    /// Multiply every stored zero's factor instead of stopping at the
    /// truncation tolerance; needed near the circle for generated zeros.
    #[arg(long)]
    all_factors: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the function on a circle of radius r; CSV angle,re,im,modulus.
    Scan {
        #[command(flatten)]
        source: FunctionArgs,
        #[arg(long, default_value_t = 0.9999)]
        r: f64,
        #[arg(long, default_value_t = 4096)]
        angles: usize,
        /// Modulus threshold 1 - delta for the summary [default: 0.05].
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Sample along a ray toward e^{i angle}; CSV radius,re,im,modulus.
    Trace {
        #[command(flatten)]
        source: FunctionArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        angle: f64,
        /// Deepest radius 1 - 2^-n [default: 40].
        #[arg(long)]
        max_exponent: Option<u32>,
        /// Radii per halving of the depth [default: 4].
        #[arg(long)]
        per_octave: Option<u32>,
        /// Oscillation tolerance for the limit verdict [default: 1e-4].
        #[arg(long)]
        verdict_tol: Option<f64>,
    },
    /// Compare limits along radial, Stolz and tangential paths; JSON.
    Probe {
        #[command(flatten)]
        source: FunctionArgs,
        /// Boundary angle; repeatable.
        #[arg(long = "angle", default_value = "0", allow_hyphen_values = true)]
        angles: Vec<f64>,
        /// Deepest depth 2^-n along each path [default: 96].
        #[arg(long)]
        probe_exponent: Option<u32>,
        /// Add a path threading the zeros nearest to each angle.
        #[arg(long)]
        through_zeros: bool,
        /// Oscillation tolerance for the limit verdict [default: 1e-4].
        #[arg(long)]
        verdict_tol: Option<f64>,
    },
    /// Frostman partial sums on a uniform angle grid; CSV angle,n,partial_sum,classification.
    Frostman {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 256)]
        angles: usize,
        /// Divergence threshold for f_n [default: 1e3].
        #[arg(long)]
        divergence: Option<f64>,
        /// Convergence tolerance on growth over the last window [default: 1e-6].
        #[arg(long)]
        cauchy: Option<f64>,
        /// Number of trailing doublings the convergence test spans [default: 4].
        #[arg(long)]
        growth_window: Option<usize>,
    },
    /// Build or evaluate a weighted series of inner functions.
    Series {
        /// JSON list of closed target sets.
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        targets: Option<PathBuf>,
        /// A series written by --emit-spec.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = commands::Construction::LohwaterPiranian)]
        construction: commands::Construction,
        /// Generator depth shared by every term.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 0.99)]
        r: f64,
        #[arg(long, default_value_t = 256)]
        angles: usize,
        /// Write the series as JSON instead of evaluating it.
        #[arg(long)]
        emit_spec: bool,
    },
    /// Classify relatively closed sets on a raster.
    Arakeljan {
        /// Grid file (text, or JSON when the name ends in .json).
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        grid: Option<PathBuf>,
        /// Bundled fixture: nested-circles, annulus-in-plane, disc-with-segment,
        /// disc-with-two-segments, separated-arcs.
        #[arg(long)]
        fixture: Option<String>,
        /// Resolution multiplier for fixtures.
        #[arg(long, default_value_t = 1)]
        scale: usize,
        /// Cell classes forming the set under test, e.g. F, E, E+F.
        #[arg(long, default_value = "F")]
        subject: String,
        /// Test G-hole independence of two sets.
        #[arg(long, num_args = 2, value_names = ["E", "F"], conflicts_with = "union")]
        independence: Option<Vec<String>>,
        /// Check both sets, their independence and their union.
        #[arg(long, num_args = 2, value_names = ["E", "F"])]
        union: Option<Vec<String>>,
        /// Report every complement component instead of a verdict.
        #[arg(long)]
        holes: bool,
        /// Use only the grid's own K cells as probes.
        #[arg(long)]
        no_auto_probes: bool,
        /// Cells within which a hole counts as reaching the boundary [default: 2].
        #[arg(long)]
        margin: Option<usize>,
        /// Write the grid as text instead of classifying it.
        #[arg(long)]
        export_grid: bool,
    },
    /// Poisson kernel mass and concentration, or the Poisson integral of a density.
    Kernels {
        /// Radii, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.9,0.99")]
        r: Vec<f64>,
        /// Half-width of the excluded arc for the concentration bound.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Boundary density JSON; emits its Poisson integral on |z| = r as CSV.
        #[arg(long)]
        density: Option<PathBuf>,
        #[arg(long, default_value_t = 1024)]
        angles: usize,
    },
    /// Run the bundled checks and print a pass/fail table.
    Selftest,
}

/// Failure carrying its exit status: 2 for bad input, 1 for computation.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn compute(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<boundarylab::Error> for CliError {
    fn from(e: boundarylab::Error) -> Self {
        use boundarylab::Error::*;
        match e {
            Invalid { .. } | ZeroOutsideDisc { .. } | Probe { .. } | Format(_) => {
                Self::input(e.to_string())
            }
            _ => Self::compute(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::compute(format!("write failed: {e}"))
    }
}

fn open_output(path: &str) -> Result<Box<dyn Write>, CliError> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(path)
            .map_err(|e| CliError::input(format!("out: cannot create {path}: {e}")))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn settings(common: &Common) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    if let Some(path) = &common.config {
        s.apply_file(path)?;
    }
    for t in &common.tol {
        s.apply_tolerance(t)?;
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let settings = settings(&cli.common)?;
    if cli.common.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.threads)
            .build_global()
            .map_err(|e| CliError::input(format!("threads: {e}")))?;
    }
    let ctx = commands::Context {
        settings,
        seed: cli.common.seed,
    };
    // Inputs are read and validated before the output file is touched.
    let job = commands::prepare(cli.command, &ctx)?;
    let mut out = open_output(&cli.common.out)?;
    let result = job.execute(&ctx, &mut out);
    if let Err(e) = &result {
        if e.code == 1 {
            commands::write_failure(&mut out, &e.message)?;
        }
    }
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("boundarylab: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
