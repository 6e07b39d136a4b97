use std::fmt;
use std::process::ExitCode;

use rayon::prelude::*;
use serde::Serialize;

use radvert::constructors::{ConstantCurvatureCircle, CounterexampleCertificate};
use radvert::scene::{CurveRecord, DensityRecord};
use radvert::suites::{self, Suite};
use radvert::{
    find_two_vertex_circle, find_vertices_with, force_vertex_count,
    make_constant_curvature_density, make_gauss_counterexample, phi_curvature, sample, Circle,
    CurvatureSample, ParametricCurve, RadialDensity, VertexOptions, VertexReport, FORMAT_VERSION,
};

use crate::input::{apply_grid, density_arg, load};
use crate::output::{csv, json, write_atomic};
use crate::{svg, ConstructArgs, ConstructKind, OutputArgs, SceneArgs, SuiteArg, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    /// Malformed scene, record or flag.
    Usage(String),
    /// Rejected by the model: geometry, domain, or a failed self-check.
    Model(radvert::Error),
    Io(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(e) if e.is_verification() => 4,
            CliError::Model(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "invalid input: {msg}"),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<radvert::Error> for CliError {
    fn from(e: radvert::Error) -> Self {
        CliError::Model(e)
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<ExitCode, CliError>;

fn emit_svg<C: ParametricCurve + ?Sized>(
    path: Option<&std::path::Path>,
    d: &RadialDensity,
    curve: &C,
    report: &VertexReport,
) -> Result<(), CliError> {
    if let Some(path) = path {
        write_atomic(path, &svg::render(d, curve, report)?)?;
    }
    Ok(())
}

pub fn curvature(args: &SceneArgs) -> CliResult {
    let scene = load(args)?;
    let n = scene.options.grid_size;
    let period = scene.curve.period();
    let rows = (0..n)
        .into_par_iter()
        .map(|i| sample(&scene.density, &scene.curve, period * i as f64 / n as f64))
        .collect::<radvert::Result<Vec<CurvatureSample>>>()?;
    let table = csv(&rows);
    if scene.svg.is_some() {
        let report = find_vertices_with(&scene.density, &scene.curve, &scene.options)?;
        emit_svg(scene.svg.as_deref(), &scene.density, &scene.curve, &report)?;
    }
    match &scene.out {
        Some(path) => write_atomic(path, &table)?,
        None => print!("{table}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn vertices(args: &SceneArgs) -> CliResult {
    let scene = load(args)?;
    let report = find_vertices_with(&scene.density, &scene.curve, &scene.options)?;
    let text = json(&report);
    emit_svg(scene.svg.as_deref(), &scene.density, &scene.curve, &report)?;
    if let Some(path) = &scene.out {
        write_atomic(path, &text)?;
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Construction<T: Serialize> {
    format_version: u32,
    construction: &'static str,
    density: DensityRecord,
    curve: CurveRecord,
    #[serde(flatten)]
    detail: T,
    /// Independent re-count on the requested grid.
    report: VertexReport,
}

#[derive(Serialize)]
struct GaussDetail {
    /// `max |k_φ(t) + b sin t|` over the grid.
    max_error: f64,
}

#[derive(Serialize)]
struct ForcedDetail {
    predicted: Vec<f64>,
}

#[derive(Serialize)]
struct ConstantDetail {
    k_value: f64,
    mean: f64,
    spread: f64,
}

#[derive(Serialize)]
struct TwoVertexDetail {
    certificate: CounterexampleCertificate,
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("construct {kind} needs --{flag}")))
}

fn circle_record(c: &Circle) -> CurveRecord {
    CurveRecord::Circle {
        b: c.b,
        radius: c.radius,
    }
}

fn finish<T: Serialize>(
    name: &'static str,
    density: &RadialDensity,
    circle: &Circle,
    detail: T,
    opts: &VertexOptions,
    io: &OutputArgs,
) -> CliResult {
    let report = find_vertices_with(density, circle, opts)?;
    emit_svg(io.svg.as_deref(), density, circle, &report)?;
    let record = Construction {
        format_version: FORMAT_VERSION,
        construction: name,
        density: DensityRecord::from(density),
        curve: circle_record(circle),
        detail,
        report,
    };
    let text = json(&record);
    if let Some(path) = &io.out {
        write_atomic(path, &text)?;
    }
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

pub fn construct(args: &ConstructArgs) -> CliResult {
    let mut opts = VertexOptions::default();
    apply_grid(&mut opts, &args.io)?;
    match args.kind {
        ConstructKind::Gauss => {
            let b = need(args.b, "b", "gauss")?;
            let ex = make_gauss_counterexample(b)?;
            let n = opts.grid_size;
            let mut max_error = 0.0f64;
            for i in 0..n {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                max_error = max_error
                    .max((phi_curvature(&ex.density, &ex.circle, t)? - ex.expected(t)).abs());
            }
            finish(
                "gauss",
                &ex.density,
                &ex.circle,
                GaussDetail { max_error },
                &opts,
                &args.io,
            )
        }
        ConstructKind::ForceCount => {
            let radius = need(args.radius, "R", "force-count")?;
            let b = need(args.b, "b", "force-count")?;
            let n = need(args.n, "n", "force-count")?;
            let built = force_vertex_count(radius, b, n, args.roots.clone())?;
            let detail = ForcedDetail {
                predicted: built.predicted.clone(),
            };
            finish(
                "force-count",
                &built.density,
                &built.circle,
                detail,
                &opts,
                &args.io,
            )
        }
        ConstructKind::ConstantK => {
            let radius = need(args.radius, "R", "constant-k")?;
            let b = need(args.b, "b", "constant-k")?;
            let ConstantCurvatureCircle {
                density,
                circle,
                k_value,
                spread,
                mean,
            } = make_constant_curvature_density(radius, b, args.c1, args.c2)?;
            finish(
                "constant-k",
                &density,
                &circle,
                ConstantDetail {
                    k_value,
                    mean,
                    spread,
                },
                &opts,
                &args.io,
            )
        }
        ConstructKind::TwoVertex => {
            let spec = args
                .density
                .as_deref()
                .ok_or_else(|| CliError::Usage("construct two-vertex needs --density".into()))?;
            let density = density_arg(spec, args.lambda)?;
            let b = need(args.b, "b", "two-vertex")?;
            let certificate = find_two_vertex_circle(&density, b)?;
            let circle = certificate.circle();
            finish(
                "two-vertex",
                &density,
                &circle,
                TwoVertexDetail { certificate },
                &opts,
                &args.io,
            )
        }
    }
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    let mut chosen: Vec<Suite> = Vec::new();
    for s in &args.suites {
        match s {
            SuiteArg::All => chosen.extend(Suite::ALL),
            SuiteArg::One(suite) => chosen.push(*suite),
        }
    }
    chosen.sort();
    chosen.dedup();
    let summary = suites::run(&chosen);
    for suite in &chosen {
        let checks: Vec<_> = summary
            .checks
            .iter()
            .filter(|c| c.suite == *suite)
            .collect();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        eprintln!(
            "{verdict} {suite}: {}/{} checks",
            checks.len() - failed.len(),
            checks.len()
        );
        for c in failed {
            eprintln!(
                "  failed {}: measured {:e}, limit {:e}",
                c.id, c.measured, c.limit
            );
        }
    }
    let text = json(&summary);
    if let Some(path) = &args.out {
        write_atomic(path, &text)?;
    }
    print!("{text}");
    Ok(if summary.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
