//! Explicit circle/density pairs with prescribed vertex behavior.
//!
//! Each constructor builds its object, then re-counts the vertices
//! numerically and fails with [`Error::Verification`] if the count does not
//! match what the construction promises.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::curvature::{circle_bracket, circle_phi_curvature};
use crate::curves::Circle;
use crate::density::{build_log_family, build_vertex_forcing, Family, RadialDensity};
use crate::error::{Error, Result};
use crate::vertices::{find_vertices, Status, VertexReport};

/// Gaussian plane with the unit circle centered at `(0, b)`.
#[derive(Debug, Clone)]
pub struct GaussExample {
    pub density: RadialDensity,
    pub circle: Circle,
}

impl GaussExample {
    /// `k_φ(t) = −b sin t`.
    pub fn expected(&self, t: f64) -> f64 {
        -self.circle.b * t.sin()
    }
}

/// Gaussian density and a unit circle whose weighted curvature is `−b sin t`,
/// giving exactly two vertices. `b` is taken by absolute value.
pub fn make_gauss_counterexample(b: f64) -> Result<GaussExample> {
    if b == 0.0 {
        return Err(Error::Degenerate(
            "b = 0 gives a circle about the origin with constant k_φ".into(),
        ));
    }
    Ok(GaussExample {
        density: RadialDensity::gaussian(),
        circle: Circle::new(b.abs(), 1.0)?,
    })
}

#[derive(Debug, Clone)]
pub struct ForcedCircle {
    pub density: RadialDensity,
    pub circle: Circle,
    /// Vertex parameters predicted from the factorization of `dk_φ/dt`,
    /// sorted on `[0, 2π)`.
    pub predicted: Vec<f64>,
    pub report: VertexReport,
}

/// Parameters where `dk_φ/dt` vanishes on the circle `(b, R)` under a
/// vertex-forcing density: `cos t = 0`, or `r(t) = rᵢ`, i.e.
/// `sin t = (rᵢ² − R² − b²)/(2Rb)`.
pub fn predicted_vertex_params(radius: f64, b: f64, roots: &[f64]) -> Vec<f64> {
    let mut ts = vec![FRAC_PI_2, 3.0 * FRAC_PI_2];
    for &ri in roots {
        let s = ((ri * ri - radius * radius - b * b) / (2.0 * radius * b)).clamp(-1.0, 1.0);
        let base = s.asin();
        ts.push((PI - base).rem_euclid(TAU));
        ts.push(base.rem_euclid(TAU));
    }
    ts.sort_by(f64::total_cmp);
    ts
}

/// Circle `(b, R)` with exactly `2n` vertices under a constructed radial
/// density.
pub fn force_vertex_count(
    radius: f64,
    b: f64,
    n: usize,
    roots: Option<Vec<f64>>,
) -> Result<ForcedCircle> {
    let density = build_vertex_forcing(radius, b, n, roots, 0.0, 0.0)?;
    let Family::VertexForcing(vf) = density.family() else {
        unreachable!()
    };
    let predicted = predicted_vertex_params(radius, b, &vf.roots);
    let circle = Circle::new(b, radius)?;
    let report = find_vertices(&density, &circle)?;
    if report.count != 2 * n as i64 {
        return Err(Error::Verification(format!(
            "expected {} vertices, found {}",
            2 * n,
            report.count
        )));
    }
    for (found, want) in report.params().iter().zip(&predicted) {
        if (found - want).abs() > 1e-6 {
            return Err(Error::Verification(format!(
                "vertex at t = {found} does not match prediction {want}"
            )));
        }
    }
    Ok(ForcedCircle {
        density,
        circle,
        predicted,
        report,
    })
}

#[derive(Debug, Clone)]
pub struct ConstantCurvatureCircle {
    pub density: RadialDensity,
    pub circle: Circle,
    /// `(1 + c₁)/R`.
    pub k_value: f64,
    /// `max − min` of `k_φ` over the verification grid.
    pub spread: f64,
    pub mean: f64,
}

/// Log-family density making `k_φ ≡ (1 + c₁)/R` on the circle `(b, R)`.
pub fn make_constant_curvature_density(
    radius: f64,
    b: f64,
    c1: f64,
    c2: f64,
) -> Result<ConstantCurvatureCircle> {
    const GRID: usize = 4096;
    let density = build_log_family(radius, b, c1, c2)?;
    let circle = Circle::new(b, radius)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for i in 0..GRID {
        let k = circle_phi_curvature(&density, &circle, TAU * i as f64 / GRID as f64)?;
        lo = lo.min(k);
        hi = hi.max(k);
        sum += k;
    }
    let spread = hi - lo;
    if spread >= 1e-10 {
        return Err(Error::Verification(format!(
            "k_φ varies by {spread:e} on the circle"
        )));
    }
    Ok(ConstantCurvatureCircle {
        density,
        circle,
        k_value: (1.0 + c1) / radius,
        spread,
        mean: sum / GRID as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorSign {
    Positive,
    Negative,
}

/// Data pinning down a two-vertex circle for a non-constant density.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleCertificate {
    pub b: f64,
    pub epsilon: f64,
    /// Sampled `min |φ′|` on `[b − ε, b + ε]`.
    #[serde(rename = "N")]
    pub n_min: f64,
    /// Strict upper bound used for `|φ″|` on `[b − ε, b + ε]`.
    #[serde(rename = "M")]
    pub m_bound: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    /// `b(b − ε)N / (M(b + ε)²)`.
    pub bound: f64,
    pub sign: FactorSign,
    pub verified_count: i64,
    pub vertices: Vec<f64>,
}

impl CounterexampleCertificate {
    pub fn circle(&self) -> Circle {
        Circle {
            b: self.b,
            radius: self.radius,
        }
    }
}

const SIGN_SAMPLES: usize = 1025;
const BRACKET_GRID: usize = 4096;

fn sample_interval(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Find a circle centered at distance `b` with exactly two vertices, given
/// `φ′(b) ≠ 0`.
///
/// 1. Halve `ε` from `b/2` until `φ′` keeps the sign of `φ′(b)` on
///    `[b − ε, b + ε]`.
/// 2. `N = min |φ′|`, `M = 1.1·max |φ″|` (at least `1e-12`) on that interval.
/// 3. `R = ½·min{ε, b(b − ε)N / (M(b + ε)²)}`.
/// 4. Check that the bracketed factor of `dk_φ/dt` keeps one sign around the
///    circle, so only `cos t` vanishes, and re-count the vertices.
pub fn find_two_vertex_circle(d: &RadialDensity, b: f64) -> Result<CounterexampleCertificate> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Geometry(format!("need b > 0, got {b}")));
    }
    let slope = d.dphi(b)?;
    if slope.abs() < 1e-12 {
        return Err(Error::NotApplicable(format!(
            "φ′({b}) = {slope:e} vanishes"
        )));
    }
    let sign = if slope > 0.0 {
        FactorSign::Positive
    } else {
        FactorSign::Negative
    };
    let s = slope.signum();

    let mut epsilon = 0.5 * b;
    let (n_min, d2_max) = loop {
        if epsilon < 1e-9 * b {
            return Err(Error::SearchFailure(format!(
                "φ′ changes sign arbitrarily close to b = {b}"
            )));
        }
        let mut n_min = f64::INFINITY;
        let mut d2_max = 0.0f64;
        let mut ok = true;
        for r in sample_interval(b - epsilon, b + epsilon, SIGN_SAMPLES) {
            match d.derivs(r) {
                Ok((dphi, d2phi)) if dphi * s > 0.0 => {
                    n_min = n_min.min(dphi.abs());
                    d2_max = d2_max.max(d2phi.abs());
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            break (n_min, d2_max);
        }
        epsilon *= 0.5;
    };

    let m_bound = (1.1 * d2_max).max(1e-12);
    let bound = b * (b - epsilon) * n_min / (m_bound * (b + epsilon).powi(2));
    let radius = 0.5 * epsilon.min(bound);
    let circle = Circle::new(b, radius)?;

    for i in 0..BRACKET_GRID {
        let t = TAU * i as f64 / BRACKET_GRID as f64;
        let r = circle.r_at(t);
        let (dphi, d2phi) = d.derivs(r)?;
        let factor = circle_bracket(&circle, r, dphi, d2phi);
        if !(factor * s > 0.0) {
            return Err(Error::Verification(format!(
                "bracketed factor is {factor:e} at t = {t}, expected sign {sign:?}"
            )));
        }
    }

    let report = find_vertices(d, &circle)?;
    if report.status != Status::Discrete || report.count != 2 {
        return Err(Error::Verification(format!(
            "circle (b = {b}, R = {radius}) has {} vertices, expected 2",
            report.count
        )));
    }

    Ok(CounterexampleCertificate {
        b,
        epsilon,
        n_min,
        m_bound,
        radius,
        bound,
        sign,
        verified_count: report.count,
        vertices: report.params(),
    })
}

/// Grid point in `[r_min, r_max]` maximizing `|φ′|` over 4096 samples, or
/// `None` when `φ′` is numerically zero there.
pub fn scan_nonconstancy(d: &RadialDensity, r_min: f64, r_max: f64) -> Option<f64> {
    const GRID: usize = 4096;
    if !(r_min < r_max) {
        return None;
    }
    let (best_r, best) = sample_interval(r_min, r_max, GRID)
        .filter_map(|r| d.dphi(r).ok().map(|v| (r, v.abs())))
        .fold(
            (r_min, 0.0),
            |acc, cand| if cand.1 > acc.1 { cand } else { acc },
        );
    (best > 1e-10).then_some(best_r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_example() {
        let ex = make_gauss_counterexample(0.5).unwrap();
        assert_eq!(find_vertices(&ex.density, &ex.circle).unwrap().count, 2);
        let ex = make_gauss_counterexample(1.0).unwrap();
        assert_eq!(ex.expected(FRAC_PI_2), -1.0);
        assert!(matches!(
            make_gauss_counterexample(0.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn forced_counts() {
        let one = force_vertex_count(2.0, 1.0, 1, None).unwrap();
        assert_eq!(one.predicted, vec![FRAC_PI_2, 3.0 * FRAC_PI_2]);
        assert_eq!(one.report.count, 2);

        let two = force_vertex_count(2.0, 1.0, 2, Some(vec![2.0])).unwrap();
        assert_eq!(two.report.count, 4);
        let base = 0.25f64.asin(); // 0.2527
        let expect = [FRAC_PI_2, PI + base, 3.0 * FRAC_PI_2, TAU - base];
        for (got, want) in two.report.params().iter().zip(expect) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }

        assert_eq!(
            force_vertex_count(2.0, 1.0, 5, None).unwrap().report.count,
            10
        );
    }

    #[test]
    fn constant_curvature_values() {
        let c = make_constant_curvature_density(1.0, 0.5, 0.0, 0.0).unwrap();
        assert_eq!(c.k_value, 1.0);
        let c = make_constant_curvature_density(2.0, 1.0, 1.0, 0.0).unwrap();
        assert!((c.mean - 1.0).abs() < 1e-12);
        let c = make_constant_curvature_density(2.0, 1.0, -1.0, 0.0).unwrap();
        assert!(c.mean.abs() < 1e-12);
        assert_eq!(c.k_value, 0.0);
        assert!(matches!(
            make_constant_curvature_density(1.0, 1.0, 1.0, 0.0),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn two_vertex_gaussian() {
        let cert = find_two_vertex_circle(&RadialDensity::gaussian(), 1.0).unwrap();
        assert_eq!(cert.sign, FactorSign::Negative);
        assert_eq!(cert.verified_count, 2);
        assert!(cert.radius < cert.epsilon && cert.radius < cert.bound);
        assert!((cert.vertices[0] - FRAC_PI_2).abs() < 1e-6);
        assert!((cert.vertices[1] - 3.0 * FRAC_PI_2).abs() < 1e-6);
    }

    #[test]
    fn two_vertex_linear() {
        let cert = find_two_vertex_circle(&RadialDensity::linear(1.0), 1.0).unwrap();
        assert_eq!(cert.sign, FactorSign::Positive);
        assert_eq!(cert.n_min, 1.0);
        assert_eq!(cert.m_bound, 1e-12);
        assert_eq!(cert.radius, 0.5 * cert.epsilon);
        assert_eq!(cert.verified_count, 2);
    }

    #[test]
    fn two_vertex_errors() {
        let flat = RadialDensity::constant(2.0);
        assert!(matches!(
            find_two_vertex_circle(&flat, 1.0),
            Err(Error::NotApplicable(_))
        ));
        // φ′ = 0 exactly at b = √3 for c₁ ln(r² + 3) would be at r = 0 only,
        // so use a density whose slope changes sign right at b instead.
        let r: Vec<f64> = (0..40).map(|i| 0.1 + 0.1 * i as f64).collect();
        let phi: Vec<f64> = r.iter().map(|&x| (x - 2.0f64).powi(3)).collect();
        let cubic = RadialDensity::tabulated(r, phi).unwrap();
        assert!(matches!(
            find_two_vertex_circle(&cubic, 2.0),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn scan_examples() {
        let g = scan_nonconstancy(&RadialDensity::gaussian(), 0.1, 3.0).unwrap();
        assert!((g - 3.0).abs() < 1e-12);
        assert_eq!(
            scan_nonconstancy(&RadialDensity::constant(1.0), 0.1, 3.0),
            None
        );
        let log = RadialDensity::log_family(1.0, 0.0, 3.0).unwrap();
        let b = scan_nonconstancy(&log, 0.1, 10.0).unwrap();
        assert!((b - 3f64.sqrt()).abs() < 10.0 / 4095.0);
    }

    #[test]
    fn predictions_are_sorted_and_distinct() {
        let p = predicted_vertex_params(2.0, 1.0, &[1.4, 1.8, 2.2, 2.6]);
        assert_eq!(p.len(), 10);
        assert!(p.windows(2).all(|w| w[1] - w[0] > 1e-3));
    }
}
