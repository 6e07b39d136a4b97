use std::path::PathBuf;

use radvert::scene::{CurveRecord, DensityRecord, SceneError, SceneOptions, SceneSpec};
use radvert::{min_origin_distance, AnyCurve, Error, RadialDensity, VertexOptions};

use crate::commands::CliError;
use crate::{OutputArgs, SceneArgs};

/// Curves closer than this to the origin are rejected: the density gradient
/// is singular there, or the circle closed forms divide by `r`.
const ORIGIN_CLEARANCE: f64 = 1e-10;

pub struct Loaded {
    pub density: RadialDensity,
    pub curve: AnyCurve,
    pub options: VertexOptions,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl From<SceneError> for CliError {
    fn from(e: SceneError) -> Self {
        match e {
            SceneError::Parse(msg) => CliError::Usage(msg),
            SceneError::Invalid(err) => CliError::Model(err),
        }
    }
}

fn parse_record<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{what} record: {e}")))
}

/// Resolve `--scene` or the inline records into built objects. Command-line
/// output flags override the scene's `options`.
pub fn load(args: &SceneArgs) -> Result<Loaded, CliError> {
    let scene = match (&args.scene, &args.density, &args.curve) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read scene {}: {e}", path.display()))
            })?;
            SceneSpec::from_json(&text)?
        }
        (None, Some(d), Some(c)) => SceneSpec {
            format_version: radvert::FORMAT_VERSION,
            density: parse_record::<DensityRecord>("density", d)?,
            curve: parse_record::<CurveRecord>("curve", c)?,
            options: SceneOptions::default(),
        },
        _ => {
            return Err(CliError::Usage(
                "give --scene or both --density and --curve".into(),
            ))
        }
    };
    let density = scene.density.build()?;
    let curve = scene.curve.build()?;
    let mut options = scene.vertex_options();
    apply_grid(&mut options, &args.io)?;
    let clearance = min_origin_distance(&curve);
    if clearance < ORIGIN_CLEARANCE {
        let err = match scene.curve {
            CurveRecord::Circle { .. } => Error::OriginOnCircle,
            _ => Error::Geometry(format!("curve passes within {clearance:e} of the origin")),
        };
        return Err(err.into());
    }
    Ok(Loaded {
        density,
        curve,
        options,
        out: args.io.out.clone().or(scene.options.out.map(PathBuf::from)),
        svg: args.io.svg.clone().or(scene.options.svg.map(PathBuf::from)),
    })
}

pub fn apply_grid(options: &mut VertexOptions, io: &OutputArgs) -> Result<(), CliError> {
    if let Some(n) = io.grid {
        options.grid_size = n;
    }
    if options.grid_size < 8 {
        return Err(CliError::Usage(format!(
            "grid must have at least 8 points, got {}",
            options.grid_size
        )));
    }
    Ok(())
}

/// `gaussian`, `linear` (slope `lambda`), `constant`, or a JSON density record.
pub fn density_arg(spec: &str, lambda: f64) -> Result<RadialDensity, CliError> {
    match spec.trim() {
        "gaussian" => Ok(RadialDensity::gaussian()),
        "linear" => Ok(RadialDensity::linear(lambda)),
        "constant" => Ok(RadialDensity::constant(0.0)),
        text => Ok(parse_record::<DensityRecord>("density", text)?.build()?),
    }
}
