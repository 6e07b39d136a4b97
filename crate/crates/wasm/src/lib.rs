//! Browser bindings for the `www/` demo page.
//!
//! The page drives three operations: profile a circle under a chosen density,
//! force `2n` vertices on a circle, and run the two-vertex search. Each call
//! takes plain numbers or JSON records and returns a JSON string, so the
//! functions in [`demo`] are ordinary Rust and are tested natively.

use wasm_bindgen::prelude::*;

pub mod demo;

fn to_js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Sampled outline, `k_φ(t)` and vertices of the circle `(b, R)`.
#[wasm_bindgen(js_name = circleProfile)]
pub fn circle_profile(
    density_json: &str,
    b: f64,
    radius: f64,
    samples: usize,
) -> Result<String, JsError> {
    to_js(demo::circle_profile(density_json, b, radius, samples))
}

/// Vertex-forcing density and the circle `(b, R)` with `2n` vertices.
#[wasm_bindgen(js_name = forceVertexCount)]
pub fn force_vertex_count(
    radius: f64,
    b: f64,
    n: usize,
    samples: usize,
) -> Result<String, JsError> {
    to_js(demo::force_vertex_count(radius, b, n, samples))
}

/// Certificate and profile of a two-vertex circle centered at distance `b`.
#[wasm_bindgen(js_name = twoVertexCircle)]
pub fn two_vertex_circle(density_json: &str, b: f64, samples: usize) -> Result<String, JsError> {
    to_js(demo::two_vertex_circle(density_json, b, samples))
}
