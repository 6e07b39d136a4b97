//! Vertices: the zeros of `dk_φ/dt` on a closed curve.
//!
//! The derivative is sampled on a uniform grid, every sign change is
//! bracketed and bisected, and grid minima of `|dk_φ/dt|` that touch zero
//! without a sign change are reported as tangential.

use serde::{Deserialize, Serialize};

use crate::curvature::{circle_dk_dt, dk_phi_dt_fd, dk_phi_dt_numeric, phi_curvature};
use crate::curves::ParametricCurve;
use crate::density::RadialDensity;
use crate::error::Result;
use crate::{par_map, FORMAT_VERSION};

/// How `dk_φ/dt` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Closed form on circles, termwise differentiation otherwise.
    #[default]
    Auto,
    /// Ignore the circle closed form.
    Generic,
    /// Five-point difference of `k_φ` everywhere.
    FiniteDifference,
}

/// Grid size and tolerances. Parameter tolerances are fractions of the period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VertexOptions {
    pub grid_size: usize,
    pub refine_tol: f64,
    pub merge_tol: f64,
    /// Tangential zeros: `|dk_φ/dt|` below this fraction of its grid maximum.
    pub tangential_tol: f64,
    /// Constant curvature: spread below `constant_tol·(1 + |mean k_φ|)`.
    pub constant_tol: f64,
    #[serde(skip)]
    pub route: Route,
}

impl Default for VertexOptions {
    fn default() -> Self {
        VertexOptions {
            grid_size: 4096,
            refine_tol: 1e-12,
            merge_tol: 1e-6,
            tangential_tol: 1e-8,
            constant_tol: 1e-9,
            route: Route::Auto,
        }
    }
}

impl VertexOptions {
    pub fn with_grid(grid_size: usize) -> Self {
        VertexOptions {
            grid_size,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    LocalMin,
    LocalMax,
    Tangential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub k_phi: f64,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Discrete,
    ConstantCurvature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexReport {
    pub format_version: u32,
    pub status: Status,
    /// Number of vertices, or −1 when every point is a vertex.
    pub count: i64,
    pub vertices: Vec<Vertex>,
    pub grid_size: usize,
    pub tolerances: VertexOptions,
    /// Largest `|dk_φ/dt|` on the grid.
    pub derivative_scale: f64,
    pub k_phi_min: f64,
    pub k_phi_max: f64,
}

impl VertexReport {
    pub fn params(&self) -> Vec<f64> {
        self.vertices.iter().map(|v| v.t).collect()
    }

    pub fn count_kind(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }
}

fn derivative<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    route: Route,
    t: f64,
) -> Result<f64> {
    match (route, curve.as_circle()) {
        (Route::Auto, Some(circle)) => circle_dk_dt(d, &circle, t),
        (Route::FiniteDifference, _) => dk_phi_dt_fd(d, curve, t, 1e-4 * curve.period()),
        _ => dk_phi_dt_numeric(d, curve, t, None),
    }
}

fn bisect(
    f: impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    tol: f64,
) -> Result<f64> {
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn golden_argmin(
    f: impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}

/// Zeros of a periodic function sampled at `f[i] = eval(i·period/n)`,
/// sorted on `[0, period)` and merged.
fn locate_zeros<F>(
    f: &[f64],
    eval: F,
    period: f64,
    opts: &VertexOptions,
) -> Result<Vec<(f64, VertexKind)>>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let n = f.len();
    let step = period / n as f64;
    let ts: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
    let scale = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = |v: f64| {
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    let refine_tol = opts.refine_tol * period;

    // (parameter, kind) candidates
    let mut found: Vec<(f64, VertexKind)> = Vec::new();
    let kind_of = |before: i32, after: i32| match (before, after) {
        (-1, 1) => VertexKind::LocalMin,
        (1, -1) => VertexKind::LocalMax,
        _ => VertexKind::Tangential,
    };

    // Bracketed sign changes, refined independently.
    let brackets: Vec<usize> = (0..n)
        .filter(|&i| {
            let j = (i + 1) % n;
            sign(f[i]) * sign(f[j]) < 0
        })
        .collect();
    let refined = par_map(&brackets, |&i| {
        let lo = ts[i];
        bisect(&eval, lo, lo + step, f[i], refine_tol)
    });
    for (&i, t) in brackets.iter().zip(refined) {
        let kind = kind_of(sign(f[i]), sign(f[(i + 1) % n]));
        found.push((t?, kind));
    }

    // Exact zeros on grid points.
    for i in 0..n {
        if f[i] == 0.0 {
            let before = sign(f[(i + n - 1) % n]);
            let after = sign(f[(i + 1) % n]);
            found.push((ts[i], kind_of(before, after)));
        }
    }

    // Touching zeros: local minima of |f| with no adjacent sign change.
    let threshold = opts.tangential_tol * scale;
    for i in 0..n {
        let (p, c, q) = (f[(i + n - 1) % n], f[i], f[(i + 1) % n]);
        let same_sign = sign(p) == sign(c) && sign(c) == sign(q) && sign(c) != 0;
        if same_sign && c.abs() <= p.abs() && c.abs() <= q.abs() && c.abs() < threshold {
            let (t, v) = golden_argmin(
                |s: f64| eval(s).map(f64::abs),
                ts[i] - step,
                ts[i] + step,
                refine_tol,
            )?;
            if v < threshold {
                found.push((t, VertexKind::Tangential));
            }
        }
    }

    // Canonical order on [0, period), merging near-duplicates.
    for entry in &mut found {
        entry.0 = entry.0.rem_euclid(period);
        if period - entry.0 <= refine_tol {
            entry.0 = 0.0;
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let merge = opts.merge_tol * period;
    let mut merged: Vec<(f64, VertexKind)> = Vec::with_capacity(found.len());
    for cand in found {
        if merged.last().is_some_and(|last| cand.0 - last.0 <= merge) {
            continue;
        }
        merged.push(cand);
    }
    if merged.len() > 1 {
        let first = merged[0].0;
        let last = merged[merged.len() - 1].0;
        if first + period - last <= merge {
            merged.pop();
        }
    }

    Ok(merged)
}

/// Locate the vertices of `curve` under density `d` with default options.
pub fn find_vertices<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
) -> Result<VertexReport> {
    find_vertices_with(d, curve, &VertexOptions::default())
}

pub fn find_vertices_with<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    opts: &VertexOptions,
) -> Result<VertexReport> {
    let n = opts.grid_size.max(8);
    let period = curve.period();
    let step = period / n as f64;
    let ts: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();

    let sampled = par_map(&ts, |&t| -> Result<(f64, f64)> {
        Ok((
            phi_curvature(d, curve, t)?,
            derivative(d, curve, opts.route, t)?,
        ))
    });
    let mut k = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for s in sampled {
        let (ki, fi) = s?;
        k.push(ki);
        f.push(fi);
    }

    let k_min = k.iter().cloned().fold(f64::INFINITY, f64::min);
    let k_max = k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let k_mean = k.iter().sum::<f64>() / n as f64;
    let scale = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut report = VertexReport {
        format_version: FORMAT_VERSION,
        status: Status::Discrete,
        count: 0,
        vertices: Vec::new(),
        grid_size: n,
        tolerances: *opts,
        derivative_scale: scale,
        k_phi_min: k_min,
        k_phi_max: k_max,
    };
    if k_max - k_min < opts.constant_tol * (1.0 + k_mean.abs()) {
        report.status = Status::ConstantCurvature;
        report.count = -1;
        return Ok(report);
    }

    let eval = |t: f64| derivative(d, curve, opts.route, t);
    let merged = locate_zeros(&f, eval, period, opts)?;

    for (t, kind) in merged {
        let p = curve.position(t);
        report.vertices.push(Vertex {
            t,
            x: p.x,
            y: p.y,
            k_phi: phi_curvature(d, curve, t)?,
            kind,
        });
    }
    report.count = report.vertices.len() as i64;
    Ok(report)
}

/// Number of vertices, or −1 when `k_φ` is constant.
pub fn count_vertices<C: ParametricCurve + ?Sized>(d: &RadialDensity, curve: &C) -> Result<i64> {
    Ok(find_vertices(d, curve)?.count)
}

/// Whether the report satisfies the four-vertex property. Constant
/// curvature counts: every point is then a vertex.
pub fn check_four_vertex(report: &VertexReport) -> bool {
    report.status == Status::ConstantCurvature || report.count >= 4
}
