//! `rv`: weighted curvature and vertices of closed curves under radial densities.
//!
//! Exit codes: 0 success, 1 verification suite failure or I/O error,
//! 2 malformed input, 3 geometry or domain error, 4 a construction that failed
//! its own check.

mod commands;
mod input;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radvert::suites::Suite;

#[derive(Parser)]
#[command(
    name = "rv",
    version,
    about = "Vertices of closed curves in planes with radial density"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample t, x, y, r, k, dφ/dn, k_φ, dk_φ/dt over a uniform grid as CSV.
    Curvature(SceneArgs),
    /// Locate and count the vertices of a curve.
    Vertices(SceneArgs),
    /// Build a circle/density pair with prescribed vertex behavior.
    Construct(ConstructArgs),
    /// Run verification suites and print a JSON summary.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SceneArgs {
    /// Scene file holding density, curve and options.
    #[arg(long, conflicts_with_all = ["density", "curve"])]
    scene: Option<PathBuf>,
    /// Inline density record (JSON).
    #[arg(long, requires = "curve")]
    density: Option<String>,
    /// Inline curve record (JSON).
    #[arg(long, requires = "density")]
    curve: Option<String>,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Args, Clone, Default)]
struct OutputArgs {
    /// Write the main output here instead of (or in addition to) stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an SVG plot of the curve and its k_φ graph.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Number of grid samples over one period.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    /// Gaussian plane with the unit circle centered at (0, b).
    Gauss,
    /// Circle (b, R) with exactly 2n vertices.
    ForceCount,
    /// Log density giving the circle (b, R) constant k_φ.
    ConstantK,
    /// Two-vertex circle for a non-constant density.
    TwoVertex,
}

#[derive(Args)]
struct ConstructArgs {
    kind: ConstructKind,
    /// Density for two-vertex: gaussian, linear, constant or a JSON record.
    #[arg(long)]
    density: Option<String>,
    /// Distance from the origin to the circle center.
    #[arg(long)]
    b: Option<f64>,
    /// Circle radius.
    #[arg(long = "R")]
    radius: Option<f64>,
    /// Half the number of vertices to force.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated interior roots in (R − b, R + b).
    #[arg(long, value_delimiter = ',')]
    roots: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c2: f64,
    /// Slope of the linear density φ = λr.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run: gauss, eq3, lemma4, cor5, cor6, cor7, thm3,
    /// four-vertex, invariance, or all.
    #[arg(required = true, value_parser = parse_suite)]
    suites: Vec<SuiteArg>,
    /// Write the JSON summary here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
enum SuiteArg {
    All,
    One(Suite),
}

fn parse_suite(s: &str) -> Result<SuiteArg, String> {
    if s == "all" {
        Ok(SuiteArg::All)
    } else {
        s.parse().map(SuiteArg::One)
    }
}

fn configure_threads() -> Result<(), commands::CliError> {
    let Ok(value) = std::env::var("RV_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            commands::CliError::Usage(format!(
                "RV_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| commands::CliError::Io(e.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Curvature(args) => commands::curvature(&args),
        Command::Vertices(args) => commands::vertices(&args),
        Command::Construct(args) => commands::construct(&args),
        Command::Verify(args) => commands::verify(&args),
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("rv: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
