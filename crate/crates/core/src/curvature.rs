//! Euclidean curvature, the normal derivative of a radial `φ`, and the
//! weighted curvature `k_φ = k − dφ/dn`.
//!
//! The normal is the leftward unit normal `(−y′, x′)/|α′|` of a
//! counterclockwise curve. For a circle of radius `R` centered at `(0, b)`
//! this gives `k = 1/R` and `k_φ = 1/R + φ′(r)·(R + b sin t)/r`.

use serde::Serialize;

use crate::curves::{Circle, Jet, ParametricCurve};
use crate::density::RadialDensity;
use crate::error::{Error, Result};

/// Below this speed a curve is treated as singular.
pub const MIN_SPEED: f64 = 1e-9;
/// Below this distance a point is treated as the origin.
pub const ORIGIN_EPS: f64 = 1e-10;
/// Allowed deviation from unit speed for the Gauss-plane formula.
pub const UNIT_SPEED_TOL: f64 = 1e-8;

/// Everything the curvature module knows about one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub k: f64,
    pub dphi_dn: f64,
    pub k_phi: f64,
    pub dk_phi_dt: f64,
}

fn speed_checked(jet: &Jet, t: f64) -> Result<f64> {
    let speed = jet.velocity.norm();
    if speed < MIN_SPEED {
        Err(Error::Regularity { t, speed })
    } else {
        Ok(speed)
    }
}

/// `(g, g′)` with `g(r) = φ′(r)/r`; at the origin uses the limit `g → φ″(0)`
/// (only reached when `φ′(0) = 0`).
fn radial_ratio(d: &RadialDensity, r: f64, t: f64) -> Result<(f64, f64)> {
    if r < ORIGIN_EPS {
        if !d.dphi_vanishes_at_origin() {
            return Err(Error::OriginSingularity { t });
        }
        let d2 = d.d2phi(r.max(d.domain().lo))?;
        return Ok((d2, 0.0));
    }
    let (dphi, d2phi) = d.derivs(r)?;
    let g = dphi / r;
    Ok((g, (d2phi - g) / r))
}

fn curvature_of(jet: &Jet, speed: f64) -> f64 {
    jet.velocity.cross(jet.acceleration) / (speed * speed * speed)
}

fn normal_derivative_of(d: &RadialDensity, jet: &Jet, speed: f64, t: f64) -> Result<f64> {
    let p = jet.position;
    let (g, _) = radial_ratio(d, p.norm(), t)?;
    // (y x′ − x y′) = position · (−y′, x′)
    let q = p.y * jet.velocity.x - p.x * jet.velocity.y;
    Ok(g * q / speed)
}

/// Signed curvature `(x′y″ − x″y′)/|α′|³`; `+1/R` on a counterclockwise circle.
pub fn euclidean_curvature<C: ParametricCurve + ?Sized>(curve: &C, t: f64) -> Result<f64> {
    let jet = curve.jet(t);
    let speed = speed_checked(&jet, t)?;
    Ok(curvature_of(&jet, speed))
}

/// `dφ/dn = φ′(r)·(y x′ − x y′)/(r |α′|)`.
pub fn normal_derivative<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    t: f64,
) -> Result<f64> {
    let jet = curve.jet(t);
    let speed = speed_checked(&jet, t)?;
    normal_derivative_of(d, &jet, speed, t)
}

/// Weighted curvature `k_φ = k − dφ/dn`.
pub fn phi_curvature<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    t: f64,
) -> Result<f64> {
    let jet = curve.jet(t);
    let speed = speed_checked(&jet, t)?;
    Ok(curvature_of(&jet, speed) - normal_derivative_of(d, &jet, speed, t)?)
}

/// Gauss-plane weighted curvature of a unit-speed curve,
/// `x′y″ − x″y′ − x y′ + x′ y`.
pub fn gauss_phi_curvature<C: ParametricCurve + ?Sized>(curve: &C, t: f64) -> Result<f64> {
    let jet = curve.jet(t);
    let speed = jet.velocity.norm();
    if (speed - 1.0).abs() >= UNIT_SPEED_TOL {
        return Err(Error::NotUnitSpeed { t, speed });
    }
    let (p, v, a) = (jet.position, jet.velocity, jet.acceleration);
    Ok(v.x * a.y - a.x * v.y - p.x * v.y + v.x * p.y)
}

fn circle_guard(d: &RadialDensity, circle: &Circle) -> Result<()> {
    if (circle.radius - circle.b).abs() <= ORIGIN_EPS && !d.dphi_vanishes_at_origin() {
        Err(Error::OriginOnCircle)
    } else {
        Ok(())
    }
}

/// Closed form on a canonical circle: `k_φ = 1/R + φ′(r)(R + b sin t)/r`.
pub fn circle_phi_curvature(d: &RadialDensity, circle: &Circle, t: f64) -> Result<f64> {
    circle_guard(d, circle)?;
    let r = circle.r_at(t);
    let (g, _) = radial_ratio(d, r, t)?;
    Ok(1.0 / circle.radius + g * (circle.radius + circle.b * t.sin()))
}

/// Derivative of `k_φ` along a canonical circle:
///
/// `dk_φ/dt = (b cos t / r³)·(φ″(r³ + (R² − b²) r)/2 + φ′(r² − (R² − b²))/2)`.
pub fn circle_dk_dt(d: &RadialDensity, circle: &Circle, t: f64) -> Result<f64> {
    circle_guard(d, circle)?;
    let r = circle.r_at(t);
    if r < ORIGIN_EPS {
        // only at t = 3π/2 on a circle through the origin; k_φ is even about it
        return Ok(0.0);
    }
    let (dphi, d2phi) = d.derivs(r)?;
    Ok(circle.b * t.cos() / (r * r * r) * circle_bracket(circle, r, dphi, d2phi))
}

/// The factor `φ″(r³ + A r)/2 + φ′(r² − A)/2`, `A = R² − b²`, whose sign
/// decides the vertices of a circle away from `cos t = 0`.
pub fn circle_bracket(circle: &Circle, r: f64, dphi: f64, d2phi: f64) -> f64 {
    let a = circle.radius * circle.radius - circle.b * circle.b;
    0.5 * d2phi * (r * r * r + a * r) + 0.5 * dphi * (r * r - a)
}

/// Derivative of `k_φ` by termwise differentiation of `k` and `dφ/dn`.
/// Needs the curve's jerk.
fn dk_phi_dt_analytic(d: &RadialDensity, jet: &Jet, t: f64) -> Result<Option<f64>> {
    let Some(jerk) = jet.jerk else {
        return Ok(None);
    };
    let (p, v, a) = (jet.position, jet.velocity, jet.acceleration);
    let speed = speed_checked(jet, t)?;
    let s2 = speed * speed;

    let c = v.cross(a);
    let dc = v.cross(jerk);
    let w = v.dot(a); // s s′
    let dk = dc / (s2 * speed) - 3.0 * c * w / (s2 * s2 * speed);

    let r = p.norm();
    let (g, dg) = radial_ratio(d, r, t)?;
    let q = p.y * v.x - p.x * v.y;
    let dq = p.y * a.x - p.x * a.y;
    let radial_term = if r < ORIGIN_EPS {
        0.0
    } else {
        dg * p.dot(v) / r * q / speed
    };
    let dn = radial_term + g * dq / speed - g * q * w / (s2 * speed);

    Ok(Some(dk - dn))
}

/// Five-point central difference of `k_φ` with step `h`.
pub fn dk_phi_dt_fd<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    t: f64,
    h: f64,
) -> Result<f64> {
    let f = |s: f64| phi_curvature(d, curve, s);
    Ok((-f(t + 2.0 * h)? + 8.0 * f(t + h)? - 8.0 * f(t - h)? + f(t - 2.0 * h)?) / (12.0 * h))
}

/// Derivative of `k_φ` in the curve parameter on the generic path.
///
/// Uses termwise differentiation when the curve exposes its jerk and a
/// five-point difference (default step `1e-4·period`) otherwise. Passing
/// `h` forces the finite difference.
pub fn dk_phi_dt_numeric<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    t: f64,
    h: Option<f64>,
) -> Result<f64> {
    if h.is_none() {
        if let Some(v) = dk_phi_dt_analytic(d, &curve.jet(t), t)? {
            return Ok(v);
        }
    }
    dk_phi_dt_fd(d, curve, t, h.unwrap_or(1e-4 * curve.period()))
}

/// Full sample at `t`. Circles use the closed-form derivative.
pub fn sample<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    t: f64,
) -> Result<CurvatureSample> {
    let jet = curve.jet(t);
    let speed = speed_checked(&jet, t)?;
    let k = curvature_of(&jet, speed);
    let dphi_dn = normal_derivative_of(d, &jet, speed, t)?;
    let dk_phi_dt = match curve.as_circle() {
        Some(circle) => circle_dk_dt(d, &circle, t)?,
        None => dk_phi_dt_numeric(d, curve, t, None)?,
    };
    Ok(CurvatureSample {
        t,
        x: jet.position.x,
        y: jet.position.y,
        r: jet.position.norm(),
        k,
        dphi_dn,
        k_phi: k - dphi_dn,
        dk_phi_dt,
    })
}
