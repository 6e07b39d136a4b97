use serde::Serialize;

use radvert::constructors::CounterexampleCertificate;
use radvert::scene::DensityRecord;
use radvert::{
    find_two_vertex_circle, find_vertices, phi_curvature, Circle, ParametricCurve, RadialDensity,
    VertexReport,
};

const MAX_SAMPLES: usize = 8192;

#[derive(Debug, Serialize)]
pub struct Profile {
    pub b: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub k_phi: Vec<f64>,
    pub report: VertexReport,
}

#[derive(Serialize)]
struct Forced {
    density: DensityRecord,
    predicted: Vec<f64>,
    profile: Profile,
}

#[derive(Serialize)]
struct TwoVertex {
    certificate: CounterexampleCertificate,
    profile: Profile,
}

fn density(json: &str) -> Result<RadialDensity, String> {
    let record: DensityRecord =
        serde_json::from_str(json).map_err(|e| format!("density record: {e}"))?;
    record.build().map_err(|e| e.to_string())
}

fn profile(d: &RadialDensity, circle: &Circle, samples: usize) -> Result<Profile, String> {
    if !(8..=MAX_SAMPLES).contains(&samples) {
        return Err(format!(
            "samples must be in 8..={MAX_SAMPLES}, got {samples}"
        ));
    }
    if circle.passes_through_origin() {
        return Err(radvert::Error::OriginOnCircle.to_string());
    }
    let report = find_vertices(d, circle).map_err(|e| e.to_string())?;
    let t: Vec<f64> = (0..=samples)
        .map(|i| circle.period() * i as f64 / samples as f64)
        .collect();
    let mut x = Vec::with_capacity(t.len());
    let mut y = Vec::with_capacity(t.len());
    let mut k_phi = Vec::with_capacity(t.len());
    for &ti in &t {
        let p = circle.position(ti);
        x.push(p.x);
        y.push(p.y);
        k_phi.push(phi_curvature(d, circle, ti).map_err(|e| e.to_string())?);
    }
    Ok(Profile {
        b: circle.b,
        radius: circle.radius,
        t,
        x,
        y,
        k_phi,
        report,
    })
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn circle_profile(
    density_json: &str,
    b: f64,
    radius: f64,
    samples: usize,
) -> Result<String, String> {
    let d = density(density_json)?;
    let circle = Circle::new(b, radius).map_err(|e| e.to_string())?;
    to_json(&profile(&d, &circle, samples)?)
}

pub fn force_vertex_count(radius: f64, b: f64, n: usize, samples: usize) -> Result<String, String> {
    let built = radvert::force_vertex_count(radius, b, n, None).map_err(|e| e.to_string())?;
    to_json(&Forced {
        density: DensityRecord::from(&built.density),
        predicted: built.predicted.clone(),
        profile: profile(&built.density, &built.circle, samples)?,
    })
}

pub fn two_vertex_circle(density_json: &str, b: f64, samples: usize) -> Result<String, String> {
    let d = density(density_json)?;
    let certificate = find_two_vertex_circle(&d, b).map_err(|e| e.to_string())?;
    let profile = profile(&d, &certificate.circle(), samples)?;
    to_json(&TwoVertex {
        certificate,
        profile,
    })
}
