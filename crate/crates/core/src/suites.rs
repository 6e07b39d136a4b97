//! Reproducible verification suites with measured error against tolerance.
//!
//! Every random draw comes from a ChaCha8 stream with a fixed per-suite seed,
//! so reruns produce identical numbers.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructors::{
    find_two_vertex_circle, force_vertex_count, predicted_vertex_params, FactorSign,
};
use crate::curvature::{
    circle_bracket, circle_dk_dt, circle_phi_curvature, dk_phi_dt_numeric, gauss_phi_curvature,
    phi_curvature,
};
use crate::curves::{Circle, FourierCurve, ParametricCurve, RotSymmetricCurve, Rotated};
use crate::density::{build_vertex_forcing, ode_residual_cor6, Family, RadialDensity};
use crate::error::Result;
use crate::vec2::Vec2;
use crate::vertices::{check_four_vertex, find_vertices_with, VertexOptions, VertexReport};
use crate::FORMAT_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gauss,
    Eq3,
    Lemma4,
    Cor5,
    Cor6,
    Cor7,
    Thm3,
    FourVertex,
    Invariance,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Gauss,
        Suite::Eq3,
        Suite::Lemma4,
        Suite::Cor5,
        Suite::Cor6,
        Suite::Cor7,
        Suite::Thm3,
        Suite::FourVertex,
        Suite::Invariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauss => "gauss",
            Suite::Eq3 => "eq3",
            Suite::Lemma4 => "lemma4",
            Suite::Cor5 => "cor5",
            Suite::Cor6 => "cor6",
            Suite::Cor7 => "cor7",
            Suite::Thm3 => "thm3",
            Suite::FourVertex => "four-vertex",
            Suite::Invariance => "invariance",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// One measured quantity. `passed` is `measured <= limit` for error checks
/// and exact equality for counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub id: String,
    pub measured: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    fn error(suite: Suite, id: impl Into<String>, measured: f64, limit: f64) -> Self {
        Check {
            suite,
            id: id.into(),
            measured,
            limit,
            passed: measured <= limit,
        }
    }

    fn count(suite: Suite, id: impl Into<String>, found: i64, expected: i64) -> Self {
        Check {
            suite,
            id: id.into(),
            measured: found as f64,
            limit: expected as f64,
            passed: found == expected,
        }
    }

    fn flag(suite: Suite, id: impl Into<String>, ok: bool) -> Self {
        Check {
            suite,
            id: id.into(),
            measured: ok as u8 as f64,
            limit: 1.0,
            passed: ok,
        }
    }

    fn failed(suite: Suite, id: impl Into<String>, err: crate::Error) -> Self {
        Check {
            suite,
            id: format!("{} (error: {err})", id.into()),
            measured: f64::NAN,
            limit: 0.0,
            passed: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub format_version: u32,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run(suites: &[Suite]) -> Summary {
    let mut checks: Vec<Check> = suites.iter().flat_map(|&s| run_suite(s)).collect();
    checks.sort_by(|a, b| a.suite.cmp(&b.suite).then_with(|| a.id.cmp(&b.id)));
    Summary {
        format_version: FORMAT_VERSION,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    let f = match suite {
        Suite::Gauss => gauss,
        Suite::Eq3 => eq3,
        Suite::Lemma4 => lemma4,
        Suite::Cor5 => cor5,
        Suite::Cor6 => cor6,
        Suite::Cor7 => cor7,
        Suite::Thm3 => thm3,
        Suite::FourVertex => four_vertex,
        Suite::Invariance => invariance,
    };
    let mut out = Vec::new();
    if let Err(e) = f(&mut out) {
        out.push(Check::failed(suite, "suite aborted", e));
    }
    out
}

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| TAU * i as f64 / n as f64)
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn params_gap(report: &VertexReport, expected: &[f64]) -> f64 {
    if report.vertices.len() != expected.len() {
        return f64::INFINITY;
    }
    report
        .params()
        .iter()
        .zip(expected)
        .map(|(a, b)| circular_gap(*a, *b))
        .fold(0.0, f64::max)
}

/// Smooth test table on `[0.01, 8]`.
pub fn sample_table(offset: f64) -> RadialDensity {
    let r: Vec<f64> = (0..800).map(|i| 0.01 + 0.01 * i as f64).collect();
    let phi: Vec<f64> = r
        .iter()
        .map(|&x| 0.3 * (1.3 * x).sin() + 0.05 * x * x + offset)
        .collect();
    RadialDensity::tabulated(r, phi).expect("valid table")
}

/// One density of every built-in family.
pub fn builtin_densities() -> Vec<RadialDensity> {
    vec![
        RadialDensity::constant(0.7),
        RadialDensity::gaussian(),
        RadialDensity::log_family(0.8, 0.0, 2.0).expect("A > 0"),
        build_vertex_forcing(2.0, 1.0, 3, None, 0.4, 0.0).expect("valid roots"),
        RadialDensity::linear(0.6),
        sample_table(0.0),
    ]
}

/// Five-point difference of the closed-form circle curvature.
pub fn circle_fd(d: &RadialDensity, circle: &Circle, t: f64, h: f64) -> Result<f64> {
    let f = |s: f64| circle_phi_curvature(d, circle, s);
    Ok((-f(t + 2.0 * h)? + 8.0 * f(t + h)? - 8.0 * f(t - h)? + f(t - 2.0 * h)?) / (12.0 * h))
}

fn gauss(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Gauss;
    let g = RadialDensity::gaussian();
    for b in [0.25, 0.5, 1.0, 2.0] {
        let c = Circle::new(b, 1.0)?;
        let mut err = 0.0f64;
        for t in grid(4096) {
            err = err.max((phi_curvature(&g, &c, t)? - (-b * t.sin())).abs());
        }
        out.push(Check::error(s, format!("b={b} k_phi=-b sin t"), err, 1e-10));
        let report = find_vertices_with(&g, &c, &VertexOptions::default())?;
        out.push(Check::count(s, format!("b={b} count"), report.count, 2));
        let gap = params_gap(&report, &[FRAC_PI_2, 3.0 * FRAC_PI_2]);
        out.push(Check::error(s, format!("b={b} vertex location"), gap, 1e-8));
    }
    Ok(())
}

fn eq3(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Eq3;
    let g = RadialDensity::gaussian();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..20 {
        let b: f64 = rng.gen_range(0.0..2.0);
        let c = Circle::new(b, 1.0)?;
        let mut err = 0.0f64;
        for t in grid(4096) {
            err = err.max((gauss_phi_curvature(&c, t)? - phi_curvature(&g, &c, t)?).abs());
        }
        out.push(Check::error(s, format!("case {i:02} b={b:.6}"), err, 1e-9));
    }
    Ok(())
}

/// Random circles with `|R − b| > 0.05`, `b, R ∈ (0.1, 3)`.
pub fn lemma4_circles(count: usize, seed: u64) -> Vec<Circle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let b: f64 = rng.gen_range(0.1..3.0);
        let radius: f64 = rng.gen_range(0.1..3.0);
        if (radius - b).abs() > 0.05 {
            out.push(Circle { b, radius });
        }
    }
    out
}

/// Finite-difference step adapted to how sharply the circle bends around
/// the origin.
pub fn lemma4_step(c: &Circle) -> f64 {
    2e-3 * ((c.radius - c.b).abs() / (c.radius + c.b)).sqrt()
}

fn lemma4(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Lemma4;
    let densities = builtin_densities();
    for (i, c) in lemma4_circles(50, 4).into_iter().enumerate() {
        let d = &densities[i % densities.len()];
        let h = lemma4_step(&c);
        let (mut scale, mut fd_err, mut generic_err) = (0.0f64, 0.0f64, 0.0f64);
        for t in grid(512) {
            let exact = circle_dk_dt(d, &c, t)?;
            scale = scale.max(exact.abs());
            fd_err = fd_err.max((exact - circle_fd(d, &c, t, h)?).abs());
            generic_err = generic_err.max((exact - dk_phi_dt_numeric(d, &c, t, None)?).abs());
        }
        let id = format!("case {i:02} {} b={:.4} R={:.4}", d.name(), c.b, c.radius);
        if scale == 0.0 {
            out.push(Check::error(s, format!("{id} fd abs"), fd_err, 1e-12));
            out.push(Check::error(
                s,
                format!("{id} generic abs"),
                generic_err,
                1e-12,
            ));
        } else {
            out.push(Check::error(
                s,
                format!("{id} fd rel"),
                fd_err / scale,
                1e-6,
            ));
            out.push(Check::error(
                s,
                format!("{id} generic rel"),
                generic_err / scale,
                1e-6,
            ));
        }
    }
    Ok(())
}

fn cor5(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Cor5;
    for d in builtin_densities() {
        for radius in [0.5, 1.0, 3.0] {
            let c = Circle::new(0.0, radius)?;
            let (mut lo, mut hi, mut deriv) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
            for t in grid(4096) {
                let k = phi_curvature(&d, &c, t)?;
                lo = lo.min(k);
                hi = hi.max(k);
                deriv = deriv.max(circle_dk_dt(&d, &c, t)?.abs());
            }
            let id = format!("{} R={radius}", d.name());
            out.push(Check::error(s, format!("{id} spread"), hi - lo, 1e-10));
            out.push(Check::error(s, format!("{id} dk/dt"), deriv, 0.0));
        }
    }
    Ok(())
}

fn cor6(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Cor6;
    let (radius, b) = (2.0, 1.0);
    for n in 1..=5usize {
        let forced = match force_vertex_count(radius, b, n, None) {
            Ok(f) => f,
            Err(e) => {
                out.push(Check::failed(s, format!("n={n}"), e));
                continue;
            }
        };
        let Family::VertexForcing(vf) = forced.density.family() else {
            unreachable!()
        };
        out.push(Check::count(
            s,
            format!("n={n} count"),
            forced.report.count,
            2 * n as i64,
        ));

        let (lo, hi) = (radius - b + 1e-3, radius + b - 1e-3);
        let rs: Vec<f64> = (0..512)
            .map(|i| lo + (hi - lo) * i as f64 / 511.0)
            .collect();
        let rhs_max = rs
            .iter()
            .map(|&r| (r * r * vf.p(r)).abs())
            .fold(0.0, f64::max);
        let mut res = 0.0f64;
        for &r in &rs {
            res = res.max(ode_residual_cor6(&forced.density, radius, b, vf.polynomial(), r)?.abs());
        }
        out.push(Check::error(
            s,
            format!("n={n} ode residual"),
            res,
            1e-9 * (1.0 + rhs_max),
        ));

        let predicted = predicted_vertex_params(radius, b, &vf.roots);
        let gap = params_gap(&forced.report, &predicted);
        out.push(Check::error(
            s,
            format!("n={n} vertex prediction"),
            gap,
            1e-6,
        ));
    }
    Ok(())
}

fn cor7(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Cor7;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        let radius: f64 = rng.gen_range(0.2..3.0);
        let b: f64 = if i % 5 == 0 {
            0.0
        } else {
            rng.gen_range(0.0..0.95 * radius)
        };
        let c1: f64 = rng.gen_range(-3.0..3.0);
        let d = crate::density::build_log_family(radius, b, c1, 0.0)?;
        let c = Circle::new(b, radius)?;
        let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for t in grid(4096) {
            let k = circle_phi_curvature(&d, &c, t)?;
            lo = lo.min(k);
            hi = hi.max(k);
            sum += k;
        }
        let mean = sum / 4096.0;
        let id = format!("case {i:02} R={radius:.4} b={b:.4} c1={c1:.4}");
        out.push(Check::error(s, format!("{id} spread"), hi - lo, 1e-10));
        out.push(Check::error(
            s,
            format!("{id} mean"),
            (mean - (1.0 + c1) / radius).abs(),
            1e-9,
        ));
    }
    Ok(())
}

fn thm3(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Thm3;
    let cases = [
        (
            "gaussian b=1",
            RadialDensity::gaussian(),
            1.0,
            FactorSign::Negative,
        ),
        (
            "linear(1) b=1",
            RadialDensity::linear(1.0),
            1.0,
            FactorSign::Positive,
        ),
        (
            "log(c1=1,A=3) b=sqrt3",
            RadialDensity::log_family(1.0, 0.0, 3.0)?,
            3f64.sqrt(),
            FactorSign::Positive,
        ),
    ];
    for (name, d, b, want_sign) in cases {
        let cert = match find_two_vertex_circle(&d, b) {
            Ok(c) => c,
            Err(e) => {
                out.push(Check::failed(s, name, e));
                continue;
            }
        };
        let printed_bound =
            b * (b - cert.epsilon) * cert.n_min / (cert.m_bound * (b + cert.epsilon).powi(2));
        let bound_ok = cert.radius > 0.0
            && cert.radius < cert.epsilon
            && cert.radius < printed_bound
            && cert.epsilon < b;
        out.push(Check::flag(s, format!("{name} R below bound"), bound_ok));

        let circle = cert.circle();
        let sgn = if want_sign == FactorSign::Positive {
            1.0
        } else {
            -1.0
        };
        let mut sign_ok = cert.sign == want_sign;
        for t in grid(4096) {
            let r = circle.r_at(t);
            let (dphi, d2phi) = d.derivs(r)?;
            sign_ok &= circle_bracket(&circle, r, dphi, d2phi) * sgn > 0.0;
        }
        out.push(Check::flag(s, format!("{name} bracket sign"), sign_ok));
        out.push(Check::count(
            s,
            format!("{name} verified count"),
            cert.verified_count,
            2,
        ));
        let report = find_vertices_with(&d, &circle, &VertexOptions::default())?;
        out.push(Check::count(s, format!("{name} recount"), report.count, 2));
        let gap = params_gap(&report, &[FRAC_PI_2, 3.0 * FRAC_PI_2]);
        out.push(Check::error(
            s,
            format!("{name} vertices at cos t = 0"),
            gap,
            1e-6,
        ));
    }
    Ok(())
}

pub fn four_vertex_densities() -> Vec<RadialDensity> {
    vec![
        RadialDensity::constant(0.0),
        RadialDensity::gaussian(),
        RadialDensity::log_family(1.0, 0.0, 3.0).expect("A > 0"),
        RadialDensity::linear(1.0),
    ]
}

/// Random `ρ = a + c cos(mθ)` with `m ∈ 2..=6` and `|c| ≤ 0.6a`.
pub fn random_polar_curves(count: usize, seed: u64) -> Vec<RotSymmetricCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a: f64 = rng.gen_range(0.5..2.0);
            let c: f64 = a * rng.gen_range(-0.6..0.6);
            let m: u32 = rng.gen_range(2..=6);
            RotSymmetricCurve { a, c, m }
        })
        .collect()
}

pub fn ellipse_samples(n: usize) -> Vec<Vec2> {
    grid(n).map(|t| Vec2::new(2.0 * t.cos(), t.sin())).collect()
}

fn four_vertex(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::FourVertex;
    let densities = four_vertex_densities();
    for (i, curve) in random_polar_curves(50, 8).iter().enumerate() {
        for d in &densities {
            let report = find_vertices_with(d, curve, &VertexOptions::default())?;
            let id = format!(
                "curve {i:02} a={:.3} c={:.3} m={} {}",
                curve.a,
                curve.c,
                curve.m,
                d.name()
            );
            out.push(Check::flag(s, id, check_four_vertex(&report)));
        }
    }
    let ellipse = FourierCurve::from_points(&ellipse_samples(64))?;
    let report = find_vertices_with(
        &RadialDensity::constant(0.0),
        &ellipse,
        &VertexOptions::default(),
    )?;
    out.push(Check::count(s, "ellipse count", report.count, 4));
    let gap = params_gap(&report, &[0.0, FRAC_PI_2, 2.0 * FRAC_PI_2, 3.0 * FRAC_PI_2]);
    out.push(Check::error(s, "ellipse vertices at axes", gap, 1e-6));
    Ok(())
}

fn max_rotation_change<C: ParametricCurve>(
    d: &RadialDensity,
    curve: &C,
    angle: f64,
) -> Result<f64> {
    let rotated = Rotated::new(curve, angle);
    let mut err = 0.0f64;
    for t in grid(1024) {
        err = err.max((phi_curvature(d, &rotated, t)? - phi_curvature(d, curve, t)?).abs());
    }
    Ok(err)
}

fn invariance(out: &mut Vec<Check>) -> Result<()> {
    let s = Suite::Invariance;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let densities = builtin_densities();
    let circle = Circle::new(0.6, 1.4)?;
    let polar = RotSymmetricCurve::new(1.2, 0.35, 3)?;
    let ellipse = FourierCurve::from_points(&ellipse_samples(64))?;
    for d in &densities {
        let angle: f64 = rng.gen_range(0.0..TAU);
        let worst = max_rotation_change(d, &circle, angle)?
            .max(max_rotation_change(d, &polar, angle)?)
            .max(max_rotation_change(d, &ellipse, angle)?);
        out.push(Check::error(
            s,
            format!("rotation {}", d.name()),
            worst,
            1e-10,
        ));
    }

    let shifted = [
        (
            RadialDensity::constant(0.0),
            RadialDensity::constant(3.0),
            0.0,
        ),
        (
            RadialDensity::log_family(0.8, 0.0, 2.0)?,
            RadialDensity::log_family(0.8, 5.0, 2.0)?,
            0.0,
        ),
        (
            build_vertex_forcing(2.0, 1.0, 3, None, 0.4, 0.0)?,
            build_vertex_forcing(2.0, 1.0, 3, None, 0.4, -2.0)?,
            0.0,
        ),
        (sample_table(0.0), sample_table(7.0), 1e-12),
    ];
    for (base, moved, tol) in &shifted {
        let mut err = 0.0f64;
        for t in grid(1024) {
            err =
                err.max((phi_curvature(base, &polar, t)? - phi_curvature(moved, &polar, t)?).abs());
        }
        out.push(Check::error(
            s,
            format!("additive constant {}", base.name()),
            err,
            *tol,
        ));
    }

    // Grid doubling over representative inputs of every suite.
    let doubled = VertexOptions::with_grid(8192);
    let standard = VertexOptions::default();
    let mut cases: Vec<(String, RadialDensity, Box<dyn ParametricCurve + Send>)> = Vec::new();
    for b in [0.25, 0.5, 1.0, 2.0] {
        cases.push((
            format!("gauss b={b}"),
            RadialDensity::gaussian(),
            Box::new(Circle::new(b, 1.0)?),
        ));
    }
    for n in 1..=5 {
        cases.push((
            format!("forced n={n}"),
            build_vertex_forcing(2.0, 1.0, n, None, 0.0, 0.0)?,
            Box::new(Circle::new(1.0, 2.0)?),
        ));
    }
    for (name, d, b) in [
        ("gaussian", RadialDensity::gaussian(), 1.0),
        ("linear", RadialDensity::linear(1.0), 1.0),
        (
            "log",
            RadialDensity::log_family(1.0, 0.0, 3.0)?,
            3f64.sqrt(),
        ),
    ] {
        if let Ok(cert) = find_two_vertex_circle(&d, b) {
            cases.push((format!("thm3 {name}"), d, Box::new(cert.circle())));
        }
    }
    cases.push((
        "ellipse".into(),
        RadialDensity::constant(0.0),
        Box::new(ellipse.clone()),
    ));
    cases.push((
        "cor7".into(),
        crate::density::build_log_family(2.0, 1.0, 1.0, 0.0)?,
        Box::new(Circle::new(1.0, 2.0)?),
    ));
    for (i, curve) in random_polar_curves(10, 8).into_iter().enumerate() {
        for d in four_vertex_densities() {
            cases.push((format!("polar {i:02} {}", d.name()), d, Box::new(curve)));
        }
    }
    for (name, d, curve) in &cases {
        let a = find_vertices_with(d, curve.as_ref(), &standard)?.count;
        let b = find_vertices_with(d, curve.as_ref(), &doubled)?.count;
        out.push(Check::count(s, format!("grid doubling {name}"), b, a));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn checks_compare_as_documented() {
        assert!(Check::error(Suite::Gauss, "x", 1e-11, 1e-10).passed);
        assert!(!Check::error(Suite::Gauss, "x", f64::NAN, 1e-10).passed);
        assert!(!Check::count(Suite::Cor6, "x", 5, 6).passed);
    }
}
