//! Closed plane curves with exact parameter derivatives.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Minimum number of samples accepted by [`FourierCurve::from_points`].
pub const MIN_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

/// Position and its first three parameter derivatives at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub position: Vec2,
    pub velocity: Vec2,
    pub acceleration: Vec2,
    pub jerk: Option<Vec2>,
}

/// A closed, regular, counterclockwise plane curve on `[0, period)`.
pub trait ParametricCurve: Sync {
    fn period(&self) -> f64 {
        TAU
    }

    fn position(&self, t: f64) -> Vec2;
    fn velocity(&self, t: f64) -> Vec2;
    fn acceleration(&self, t: f64) -> Vec2;

    /// Third derivative, when known in closed form.
    fn jerk(&self, _t: f64) -> Option<Vec2> {
        None
    }

    fn jet(&self, t: f64) -> Jet {
        Jet {
            position: self.position(t),
            velocity: self.velocity(t),
            acceleration: self.acceleration(t),
            jerk: self.jerk(t),
        }
    }

    fn orientation(&self) -> Orientation {
        Orientation::Counterclockwise
    }

    /// The curve as a canonical circle, enabling closed-form curvature.
    fn as_circle(&self) -> Option<Circle> {
        None
    }
}

impl<C: ParametricCurve + ?Sized> ParametricCurve for &C {
    fn period(&self) -> f64 {
        (**self).period()
    }
    fn position(&self, t: f64) -> Vec2 {
        (**self).position(t)
    }
    fn velocity(&self, t: f64) -> Vec2 {
        (**self).velocity(t)
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        (**self).acceleration(t)
    }
    fn jerk(&self, t: f64) -> Option<Vec2> {
        (**self).jerk(t)
    }
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }
    fn orientation(&self) -> Orientation {
        (**self).orientation()
    }
    fn as_circle(&self) -> Option<Circle> {
        (**self).as_circle()
    }
}

/// Circle of radius `R` centered at `(0, b)`, parametrized
/// `t ↦ (R cos t, R sin t + b)`.
///
/// Every circle reduces to this form by a rotation about the origin, which
/// leaves the weighted curvature unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub b: f64,
    #[serde(rename = "R")]
    pub radius: f64,
}

impl Circle {
    pub fn new(b: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Geometry(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Error::Geometry(format!(
                "center distance must be ≥ 0, got {b}"
            )));
        }
        Ok(Circle { b, radius })
    }

    /// Circle with an arbitrary center, stored in canonical form `b = |center|`.
    pub fn from_center(center: Vec2, radius: f64) -> Result<Self> {
        Circle::new(center.norm(), radius)
    }

    /// `r(t) = √(R² + b² + 2Rb sin t)`.
    pub fn r_at(&self, t: f64) -> f64 {
        let (b, rr) = (self.b, self.radius);
        (rr * rr + b * b + 2.0 * rr * b * t.sin()).max(0.0).sqrt()
    }

    pub fn passes_through_origin(&self) -> bool {
        (self.radius - self.b).abs() < 1e-12
    }

    pub fn contains_origin(&self) -> bool {
        self.radius > self.b
    }
}

impl ParametricCurve for Circle {
    fn position(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        Vec2::new(self.radius * c, self.radius * s + self.b)
    }
    fn velocity(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        Vec2::new(-self.radius * s, self.radius * c)
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        Vec2::new(-self.radius * c, -self.radius * s)
    }
    fn jerk(&self, t: f64) -> Option<Vec2> {
        let (s, c) = t.sin_cos();
        Some(Vec2::new(self.radius * s, -self.radius * c))
    }
    fn as_circle(&self) -> Option<Circle> {
        Some(*self)
    }
}

/// Star-shaped curve `ρ(θ) = a + c·cos(mθ)`, invariant under rotation by
/// `2π/m` about the origin. With `m = 2` it is also centrally symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotSymmetricCurve {
    pub a: f64,
    pub c: f64,
    pub m: u32,
}

impl RotSymmetricCurve {
    pub fn new(a: f64, c: f64, m: u32) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Shape(format!("a must be positive, got {a}")));
        }
        if !(c.abs() < a) {
            return Err(Error::Shape(format!("need |c| < a, got a = {a}, c = {c}")));
        }
        if m < 2 {
            return Err(Error::Shape(format!(
                "symmetry order m must be ≥ 2, got {m}"
            )));
        }
        Ok(RotSymmetricCurve { a, c, m })
    }

    pub fn rho(&self, theta: f64) -> f64 {
        self.a + self.c * (self.m as f64 * theta).cos()
    }

    /// `(ρ, ρ′, ρ″, ρ‴)` at `θ`.
    fn rho_derivs(&self, theta: f64) -> [f64; 4] {
        let m = self.m as f64;
        let (s, co) = (m * theta).sin_cos();
        let c = self.c;
        [
            self.a + c * co,
            -c * m * s,
            -c * m * m * co,
            c * m * m * m * s,
        ]
    }
}

impl ParametricCurve for RotSymmetricCurve {
    fn position(&self, t: f64) -> Vec2 {
        self.jet(t).position
    }
    fn velocity(&self, t: f64) -> Vec2 {
        self.jet(t).velocity
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        self.jet(t).acceleration
    }
    fn jerk(&self, t: f64) -> Option<Vec2> {
        self.jet(t).jerk
    }

    fn jet(&self, t: f64) -> Jet {
        // u = (cos, sin), w = u′ = (−sin, cos), w′ = −u
        let [r0, r1, r2, r3] = self.rho_derivs(t);
        let (s, c) = t.sin_cos();
        let u = Vec2::new(c, s);
        let w = Vec2::new(-s, c);
        Jet {
            position: r0 * u,
            velocity: r1 * u + r0 * w,
            acceleration: (r2 - r0) * u + (2.0 * r1) * w,
            jerk: Some((r3 - 3.0 * r1) * u + (3.0 * r2 - r0) * w),
        }
    }
}

/// Trigonometric interpolant of `N` samples taken at `tⱼ = 2πj/N`.
///
/// Derivatives come from differentiating the trigonometric polynomial, so
/// they are exact for the interpolant. Self-intersection of the samples is
/// not checked.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCurve {
    // (cos, sin) coefficient pairs for harmonics 0..=N/2, x then y.
    cx: Vec<(f64, f64)>,
    cy: Vec<(f64, f64)>,
    source_orientation: Orientation,
    samples: usize,
}

impl FourierCurve {
    /// Fit a closed curve through `points`, reversing their order if they
    /// run clockwise so the result is counterclockwise.
    pub fn from_points(points: &[Vec2]) -> Result<Self> {
        let n = points.len();
        if n < MIN_SAMPLES {
            return Err(Error::Sample(format!(
                "need at least {MIN_SAMPLES} points, got {n}"
            )));
        }
        if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(Error::Sample("non-finite point".into()));
        }
        let area2: f64 = (0..n).map(|j| points[j].cross(points[(j + 1) % n])).sum();
        let (ordered, source_orientation) = if area2 < 0.0 {
            let mut rev = Vec::with_capacity(n);
            rev.push(points[0]);
            rev.extend(points[1..].iter().rev());
            (rev, Orientation::Clockwise)
        } else {
            (points.to_vec(), Orientation::Counterclockwise)
        };
        let xs: Vec<f64> = ordered.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = ordered.iter().map(|p| p.y).collect();
        Ok(FourierCurve {
            cx: real_dft(&xs),
            cy: real_dft(&ys),
            source_orientation,
            samples: n,
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Orientation of the input samples before normalization.
    pub fn source_orientation(&self) -> Orientation {
        self.source_orientation
    }

    fn eval_all(&self, t: f64) -> [Vec2; 4] {
        let mut out = [Vec2::ZERO; 4];
        for (k, (&(ax, bx), &(ay, by))) in self.cx.iter().zip(&self.cy).enumerate() {
            let kf = k as f64;
            let (s, c) = (kf * t).sin_cos();
            // d^j/dt^j of (a cos kt + b sin kt)
            let mut pow = 1.0;
            let terms = [(c, s), (-s, c), (-c, -s), (s, -c)];
            for (j, &(tc, ts)) in terms.iter().enumerate() {
                out[j].x += pow * (ax * tc + bx * ts);
                out[j].y += pow * (ay * tc + by * ts);
                pow *= kf;
            }
        }
        out
    }
}

/// Coefficients `(aₖ, bₖ)` with `f(t) = Σ aₖ cos kt + bₖ sin kt`, the Nyquist
/// term (even `N`) carrying half weight.
fn real_dft(values: &[f64]) -> Vec<(f64, f64)> {
    let n = values.len();
    let half = n / 2;
    (0..=half)
        .map(|k| {
            let (mut a, mut b) = (0.0, 0.0);
            for (j, &v) in values.iter().enumerate() {
                let angle = TAU * ((k * j) % n) as f64 / n as f64;
                let (s, c) = angle.sin_cos();
                a += v * c;
                b += v * s;
            }
            if k == 0 || (n.is_multiple_of(2) && k == half) {
                (a / n as f64, 0.0)
            } else {
                (2.0 * a / n as f64, 2.0 * b / n as f64)
            }
        })
        .collect()
}

impl ParametricCurve for FourierCurve {
    fn position(&self, t: f64) -> Vec2 {
        self.eval_all(t)[0]
    }
    fn velocity(&self, t: f64) -> Vec2 {
        self.eval_all(t)[1]
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        self.eval_all(t)[2]
    }
    fn jerk(&self, t: f64) -> Option<Vec2> {
        Some(self.eval_all(t)[3])
    }
    fn jet(&self, t: f64) -> Jet {
        let [position, velocity, acceleration, jerk] = self.eval_all(t);
        Jet {
            position,
            velocity,
            acceleration,
            jerk: Some(jerk),
        }
    }
}

/// A curve rotated about the origin by a fixed angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotated<C> {
    pub inner: C,
    pub angle: f64,
}

impl<C: ParametricCurve> Rotated<C> {
    pub fn new(inner: C, angle: f64) -> Self {
        Rotated { inner, angle }
    }
}

impl<C: ParametricCurve> ParametricCurve for Rotated<C> {
    fn period(&self) -> f64 {
        self.inner.period()
    }
    fn position(&self, t: f64) -> Vec2 {
        self.inner.position(t).rotate(self.angle)
    }
    fn velocity(&self, t: f64) -> Vec2 {
        self.inner.velocity(t).rotate(self.angle)
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        self.inner.acceleration(t).rotate(self.angle)
    }
    fn jerk(&self, t: f64) -> Option<Vec2> {
        self.inner.jerk(t).map(|j| j.rotate(self.angle))
    }
    fn jet(&self, t: f64) -> Jet {
        let j = self.inner.jet(t);
        Jet {
            position: j.position.rotate(self.angle),
            velocity: j.velocity.rotate(self.angle),
            acceleration: j.acceleration.rotate(self.angle),
            jerk: j.jerk.map(|v| v.rotate(self.angle)),
        }
    }
}

/// Any of the built-in curve kinds, for callers that pick one at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyCurve {
    Circle(Circle),
    Polar(RotSymmetricCurve),
    Sampled(FourierCurve),
}

impl AnyCurve {
    fn inner(&self) -> &dyn ParametricCurve {
        match self {
            AnyCurve::Circle(c) => c,
            AnyCurve::Polar(c) => c,
            AnyCurve::Sampled(c) => c,
        }
    }
}

impl ParametricCurve for AnyCurve {
    fn period(&self) -> f64 {
        self.inner().period()
    }
    fn position(&self, t: f64) -> Vec2 {
        self.inner().position(t)
    }
    fn velocity(&self, t: f64) -> Vec2 {
        self.inner().velocity(t)
    }
    fn acceleration(&self, t: f64) -> Vec2 {
        self.inner().acceleration(t)
    }
    fn jerk(&self, t: f64) -> Option<Vec2> {
        self.inner().jerk(t)
    }
    fn jet(&self, t: f64) -> Jet {
        self.inner().jet(t)
    }
    fn as_circle(&self) -> Option<Circle> {
        self.inner().as_circle()
    }
}

/// Smallest distance from the origin to the curve.
///
/// Scans 4096 parameters, then polishes the best few candidates by
/// golden-section search to `1e-10` in parameter.
pub fn min_origin_distance<C: ParametricCurve + ?Sized>(curve: &C) -> f64 {
    const GRID: usize = 4096;
    let period = curve.period();
    let step = period / GRID as f64;
    let dist: Vec<f64> = (0..GRID)
        .map(|i| curve.position(i as f64 * step).norm())
        .collect();
    let mut best = dist.iter().cloned().fold(f64::INFINITY, f64::min);
    for i in 0..GRID {
        let prev = dist[(i + GRID - 1) % GRID];
        let next = dist[(i + 1) % GRID];
        if dist[i] <= prev && dist[i] <= next {
            let t = i as f64 * step;
            let found = golden_min(|s| curve.position(s).norm(), t - step, t + step, 1e-10);
            best = best.min(found);
        }
    }
    best
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2).min(f(0.5 * (lo + hi)))
}

/// Angle that `t = 0` of a canonical circle maps to; half-turn helper for
/// callers placing circles by center.
pub fn canonical_rotation(center: Vec2) -> f64 {
    if center.norm() == 0.0 {
        0.0
    } else {
        center.y.atan2(center.x) - PI / 2.0
    }
}
