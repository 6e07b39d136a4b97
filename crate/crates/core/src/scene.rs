//! Declarative density, curve and scene records (JSON syntax, strict keys).

use serde::{Deserialize, Serialize};

use crate::curves::{AnyCurve, Circle, FourierCurve, RotSymmetricCurve};
use crate::density::{build_log_family, build_vertex_forcing, Family, RadialDensity};
use crate::error::{Error, Result};
use crate::vec2::Vec2;
use crate::vertices::VertexOptions;
use crate::FORMAT_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensityRecord {
    Constant {
        #[serde(default)]
        c: f64,
    },
    Gaussian {},
    Log {
        #[serde(rename = "R")]
        radius: f64,
        b: f64,
        c1: f64,
        #[serde(default)]
        c2: f64,
    },
    VertexForcing {
        #[serde(rename = "R")]
        radius: f64,
        b: f64,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        roots: Option<Vec<f64>>,
        #[serde(default)]
        c1: f64,
        #[serde(default)]
        c2: f64,
    },
    Linear {
        lambda: f64,
    },
    Tabulated {
        r: Vec<f64>,
        phi: Vec<f64>,
    },
}

impl DensityRecord {
    pub fn build(&self) -> Result<RadialDensity> {
        match self {
            DensityRecord::Constant { c } => Ok(RadialDensity::constant(*c)),
            DensityRecord::Gaussian {} => Ok(RadialDensity::gaussian()),
            DensityRecord::Log { radius, b, c1, c2 } => build_log_family(*radius, *b, *c1, *c2),
            DensityRecord::VertexForcing {
                radius,
                b,
                n,
                roots,
                c1,
                c2,
            } => build_vertex_forcing(*radius, *b, *n, roots.clone(), *c1, *c2),
            DensityRecord::Linear { lambda } => Ok(RadialDensity::linear(*lambda)),
            DensityRecord::Tabulated { r, phi } => RadialDensity::tabulated(r.clone(), phi.clone()),
        }
    }
}

impl From<&RadialDensity> for DensityRecord {
    fn from(d: &RadialDensity) -> Self {
        match d.family() {
            Family::Constant { level } => DensityRecord::Constant { c: *level },
            Family::Gaussian => DensityRecord::Gaussian {},
            // any (R, b) with R² − b² = A describes the same density
            Family::LogFamily { c1, c2, a } => DensityRecord::Log {
                radius: a.sqrt(),
                b: 0.0,
                c1: *c1,
                c2: *c2,
            },
            Family::VertexForcing(vf) => DensityRecord::VertexForcing {
                radius: vf.radius,
                b: vf.b,
                n: vf.n(),
                roots: Some(vf.roots.clone()),
                c1: vf.c1,
                c2: vf.c2,
            },
            Family::Linear { slope } => DensityRecord::Linear { lambda: *slope },
            Family::Tabulated(t) => DensityRecord::Tabulated {
                r: t.radii().to_vec(),
                phi: t.values().to_vec(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "curve", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveRecord {
    Circle {
        b: f64,
        #[serde(rename = "R")]
        radius: f64,
    },
    Polar {
        a: f64,
        c: f64,
        m: u32,
    },
    Sampled {
        points: Vec<[f64; 2]>,
    },
}

impl CurveRecord {
    pub fn build(&self) -> Result<AnyCurve> {
        Ok(match self {
            CurveRecord::Circle { b, radius } => AnyCurve::Circle(Circle::new(*b, *radius)?),
            CurveRecord::Polar { a, c, m } => AnyCurve::Polar(RotSymmetricCurve::new(*a, *c, *m)?),
            CurveRecord::Sampled { points } => {
                let pts: Vec<Vec2> = points.iter().map(|&p| p.into()).collect();
                AnyCurve::Sampled(FourierCurve::from_points(&pts)?)
            }
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<VertexOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub density: DensityRecord,
    pub curve: CurveRecord,
    #[serde(default)]
    pub options: SceneOptions,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

/// Error reading a scene: either malformed text or an invalid object.
#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("scene parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl SceneSpec {
    pub fn from_json(text: &str) -> std::result::Result<Self, SceneError> {
        let scene: SceneSpec =
            serde_json::from_str(text).map_err(|e| SceneError::Parse(e.to_string()))?;
        if scene.format_version != FORMAT_VERSION {
            return Err(SceneError::Parse(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                scene.format_version
            )));
        }
        Ok(scene)
    }

    /// Vertex options from `options.tolerances`, with `grid_size` overriding.
    pub fn vertex_options(&self) -> VertexOptions {
        let mut opts = self.options.tolerances.unwrap_or_default();
        if let Some(n) = self.options.grid_size {
            opts.grid_size = n;
        }
        opts
    }
}
