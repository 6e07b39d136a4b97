//! Radial densities `e^φ(r)` with exact first and second derivatives.
//!
//! Curvature only ever needs `φ′` and `φ″`, so those are the cheap path
//! ([`RadialDensity::derivs`]). The value `φ` itself is closed form for every
//! family except [`Family::VertexForcing`], where it is recovered by adaptive
//! quadrature of `φ′`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature;

/// Absolute tolerance for recovering `φ` from `φ′` by quadrature.
const PHI_QUAD_TOL: f64 = 1e-10;

/// Minimum number of samples for a tabulated density.
pub const MIN_TABLE_POINTS: usize = 8;

/// `(φ, φ′, φ″)` at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiValues {
    pub phi: f64,
    pub dphi: f64,
    pub d2phi: f64,
}

/// Interval of admissible radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
}

impl Domain {
    fn open_positive() -> Self {
        Domain {
            lo: 0.0,
            hi: f64::INFINITY,
            lo_closed: false,
        }
    }

    fn closed_nonnegative() -> Self {
        Domain {
            lo: 0.0,
            hi: f64::INFINITY,
            lo_closed: true,
        }
    }

    pub fn contains(&self, r: f64) -> bool {
        let above = if self.lo_closed {
            r >= self.lo
        } else {
            r > self.lo
        };
        above && r <= self.hi && r.is_finite()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        if self.hi.is_infinite() {
            write!(f, "{open}{}, ∞)", self.lo)
        } else {
            write!(f, "{open}{}, {}]", self.lo, self.hi)
        }
    }
}

/// `φ′(r) = (P(r) + c₁)·r/(r² + A)` with `P′ = p = ∏(r − rᵢ)` and `P(0) = 0`.
///
/// This is the general solution of
/// `φ″(r³ + A r) + φ′(r² − A) = r² p(r)`, `A = R² − b²`, which makes the
/// circle of radius `R` centered at distance `b` from the origin have exactly
/// `2n` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexForcing {
    pub radius: f64,
    pub b: f64,
    pub roots: Vec<f64>,
    pub a: f64,
    pub c1: f64,
    pub c2: f64,
    /// Radius where `φ = c₂`.
    pub r_ref: f64,
    p: Polynomial,
    big_p: Polynomial,
}

impl VertexForcing {
    pub fn n(&self) -> usize {
        self.roots.len() + 1
    }

    /// `p(r) = ∏(r − rᵢ)`, evaluated in product form.
    pub fn p(&self, r: f64) -> f64 {
        self.roots.iter().map(|&ri| r - ri).product()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.p
    }

    fn dphi(&self, r: f64) -> f64 {
        (self.big_p.eval(r) + self.c1) * r / (r * r + self.a)
    }

    fn d2phi(&self, r: f64) -> f64 {
        let q = r * r + self.a;
        let num = self.big_p.eval(r) + self.c1;
        ((self.p(r) * r + num) * q - 2.0 * r * r * num) / (q * q)
    }

    fn phi(&self, r: f64) -> f64 {
        self.c2 + quadrature::integrate(|s| self.dphi(s), self.r_ref, r, PHI_QUAD_TOL)
    }
}

/// Samples `(rᵢ, φᵢ)` joined by a C² piecewise quintic.
///
/// Knot derivatives come from the degree-6 polynomial through the seven
/// nearest samples; each interval is the quintic Hermite interpolant matching
/// `(φ, φ′, φ″)` at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    r: Vec<f64>,
    phi: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl Tabulated {
    pub fn new(r: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        if r.len() != phi.len() {
            return Err(Error::Table(format!(
                "{} radii but {} values",
                r.len(),
                phi.len()
            )));
        }
        if r.len() < MIN_TABLE_POINTS {
            return Err(Error::Table(format!(
                "need at least {MIN_TABLE_POINTS} samples, got {}",
                r.len()
            )));
        }
        if r.iter().chain(&phi).any(|v| !v.is_finite()) {
            return Err(Error::Table("non-finite sample".into()));
        }
        if r[0] < 0.0 {
            return Err(Error::Table("radii must be nonnegative".into()));
        }
        if r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Table("radii must be strictly increasing".into()));
        }

        let n = r.len();
        let stencil = 7.min(n);
        let mut d1 = vec![0.0; n];
        let mut d2 = vec![0.0; n];
        for i in 0..n {
            let start = i.saturating_sub(stencil / 2).min(n - stencil);
            let xs = &r[start..start + stencil];
            let w = fornberg_weights(r[i], xs, 2);
            d1[i] = w[1].iter().zip(&phi[start..]).map(|(w, f)| w * f).sum();
            d2[i] = w[2].iter().zip(&phi[start..]).map(|(w, f)| w * f).sum();
        }
        Ok(Tabulated { r, phi, d1, d2 })
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.phi
    }

    fn eval(&self, x: f64) -> PhiValues {
        let n = self.r.len();
        let i = match self.r.partition_point(|&ri| ri <= x) {
            0 => 0,
            k => (k - 1).min(n - 2),
        };
        let h = self.r[i + 1] - self.r[i];
        let s = (x - self.r[i]) / h;

        let c0 = self.phi[i];
        let c1 = h * self.d1[i];
        let c2 = 0.5 * h * h * self.d2[i];
        let f = self.phi[i + 1] - (c0 + c1 + c2);
        let d = h * self.d1[i + 1] - (c1 + 2.0 * c2);
        let sd = h * h * self.d2[i + 1] - 2.0 * c2;
        let c3 = 10.0 * f - 4.0 * d + 0.5 * sd;
        let c4 = -15.0 * f + 7.0 * d - sd;
        let c5 = 6.0 * f - 3.0 * d + 0.5 * sd;

        let phi = c0 + s * (c1 + s * (c2 + s * (c3 + s * (c4 + s * c5))));
        let dp = c1 + s * (2.0 * c2 + s * (3.0 * c3 + s * (4.0 * c4 + s * 5.0 * c5)));
        let d2p = 2.0 * c2 + s * (6.0 * c3 + s * (12.0 * c4 + s * 20.0 * c5));
        PhiValues {
            phi,
            dphi: dp / h,
            d2phi: d2p / (h * h),
        }
    }
}

/// Finite-difference weights for derivatives `0..=m` at `z` on nodes `xs`
/// (Fornberg's recursion). `w[k][j]` multiplies `f(xs[j])` for the `k`-th
/// derivative.
fn fornberg_weights(z: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Constant {
        level: f64,
    },
    /// `φ = −r²/2`. The Gaussian normalizer only shifts `φ` by a constant.
    Gaussian,
    /// `φ = c₁ ln(r² + A) + c₂`.
    LogFamily {
        c1: f64,
        c2: f64,
        a: f64,
    },
    VertexForcing(VertexForcing),
    Linear {
        slope: f64,
    },
    Tabulated(Tabulated),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialDensity {
    family: Family,
    domain: Domain,
}

impl RadialDensity {
    pub fn constant(level: f64) -> Self {
        RadialDensity {
            family: Family::Constant { level },
            domain: Domain::closed_nonnegative(),
        }
    }

    /// `φ = −r²/2`. The `−ln 2π` of the normalized Gauss plane is dropped:
    /// additive constants cancel in `k_φ`.
    pub fn gaussian() -> Self {
        RadialDensity {
            family: Family::Gaussian,
            domain: Domain::closed_nonnegative(),
        }
    }

    pub fn linear(slope: f64) -> Self {
        let domain = if slope == 0.0 {
            Domain::closed_nonnegative()
        } else {
            Domain::open_positive()
        };
        RadialDensity {
            family: Family::Linear { slope },
            domain,
        }
    }

    /// `φ = c₁ ln(r² + A) + c₂`; requires `A > 0`.
    pub fn log_family(c1: f64, c2: f64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Geometry(format!("log family needs A > 0, got {a}")));
        }
        Ok(RadialDensity {
            family: Family::LogFamily { c1, c2, a },
            domain: Domain::closed_nonnegative(),
        })
    }

    pub fn tabulated(r: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        let table = Tabulated::new(r, phi)?;
        let domain = Domain {
            lo: table.r[0],
            hi: *table.r.last().unwrap(),
            lo_closed: true,
        };
        Ok(RadialDensity {
            family: Family::Tabulated(table),
            domain,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Constant { .. } => "constant",
            Family::Gaussian => "gaussian",
            Family::LogFamily { .. } => "log",
            Family::VertexForcing(_) => "vertex_forcing",
            Family::Linear { .. } => "linear",
            Family::Tabulated(_) => "tabulated",
        }
    }

    /// Whether `φ′(0) = 0`, so that `φ′(r)/r` stays bounded at the origin.
    pub fn dphi_vanishes_at_origin(&self) -> bool {
        match &self.family {
            Family::Constant { .. } | Family::Gaussian | Family::LogFamily { .. } => true,
            Family::Linear { slope } => *slope == 0.0,
            Family::VertexForcing(_) | Family::Tabulated(_) => false,
        }
    }

    fn check(&self, r: f64) -> Result<()> {
        if self.domain.contains(r) {
            Ok(())
        } else {
            Err(Error::Domain {
                r,
                domain: self.domain.to_string(),
            })
        }
    }

    /// `(φ′, φ″)` at `r`.
    pub fn derivs(&self, r: f64) -> Result<(f64, f64)> {
        self.check(r)?;
        Ok(match &self.family {
            Family::Constant { .. } => (0.0, 0.0),
            Family::Gaussian => (-r, -1.0),
            Family::LogFamily { c1, a, .. } => {
                let q = r * r + a;
                (2.0 * c1 * r / q, 2.0 * c1 * (a - r * r) / (q * q))
            }
            Family::VertexForcing(vf) => (vf.dphi(r), vf.d2phi(r)),
            Family::Linear { slope } => (*slope, 0.0),
            Family::Tabulated(t) => {
                let v = t.eval(r);
                (v.dphi, v.d2phi)
            }
        })
    }

    pub fn dphi(&self, r: f64) -> Result<f64> {
        self.derivs(r).map(|(d, _)| d)
    }

    pub fn d2phi(&self, r: f64) -> Result<f64> {
        self.derivs(r).map(|(_, d2)| d2)
    }

    pub fn phi(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        Ok(match &self.family {
            Family::Constant { level } => *level,
            Family::Gaussian => -0.5 * r * r,
            Family::LogFamily { c1, c2, a } => c1 * (r * r + a).ln() + c2,
            Family::VertexForcing(vf) => vf.phi(r),
            Family::Linear { slope } => slope * r,
            Family::Tabulated(t) => t.eval(r).phi,
        })
    }

    /// The triple `(φ, φ′, φ″)` at `r`.
    pub fn eval(&self, r: f64) -> Result<PhiValues> {
        if let Family::Tabulated(t) = &self.family {
            self.check(r)?;
            return Ok(t.eval(r));
        }
        let (dphi, d2phi) = self.derivs(r)?;
        Ok(PhiValues {
            phi: self.phi(r)?,
            dphi,
            d2phi,
        })
    }
}

fn check_circle_contains_origin(radius: f64, b: f64) -> Result<()> {
    if !(radius.is_finite() && b.is_finite()) {
        return Err(Error::Geometry("R and b must be finite".into()));
    }
    if !(radius > b) {
        return Err(Error::Geometry(format!(
            "need R > b so that A = R² − b² > 0 (R = {radius}, b = {b})"
        )));
    }
    Ok(())
}

/// Density whose circle `(b, R)` has exactly `2n` vertices.
///
/// Without explicit `roots`, the `n − 1` roots are spaced evenly:
/// `rᵢ = (R − b) + i·2b/n`.
pub fn build_vertex_forcing(
    radius: f64,
    b: f64,
    n: usize,
    roots: Option<Vec<f64>>,
    c1: f64,
    c2: f64,
) -> Result<RadialDensity> {
    check_circle_contains_origin(radius, b)?;
    if !(b > 0.0) {
        return Err(Error::Geometry(format!("need b > 0, got {b}")));
    }
    if n == 0 {
        return Err(Error::RootPlacement("n must be at least 1".into()));
    }
    let (lo, hi) = (radius - b, radius + b);
    let roots = match roots {
        Some(roots) => {
            if roots.len() != n - 1 {
                return Err(Error::RootPlacement(format!(
                    "n = {n} needs {} roots, got {}",
                    n - 1,
                    roots.len()
                )));
            }
            if let Some(&bad) = roots.iter().find(|&&ri| !(ri > lo && ri < hi)) {
                return Err(Error::RootPlacement(format!(
                    "root {bad} is outside ({lo}, {hi})"
                )));
            }
            if roots.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::RootPlacement(
                    "roots must be strictly increasing".into(),
                ));
            }
            roots
        }
        None => (1..n).map(|i| lo + i as f64 * 2.0 * b / n as f64).collect(),
    };
    let p = Polynomial::from_roots(&roots);
    let big_p = p.antiderivative();
    let vf = VertexForcing {
        radius,
        b,
        roots,
        a: radius * radius - b * b,
        c1,
        c2,
        r_ref: radius,
        p,
        big_p,
    };
    Ok(RadialDensity {
        family: Family::VertexForcing(vf),
        domain: Domain::open_positive(),
    })
}

/// Density making the circle `(b, R)` have constant weighted curvature.
pub fn build_log_family(radius: f64, b: f64, c1: f64, c2: f64) -> Result<RadialDensity> {
    check_circle_contains_origin(radius, b)?;
    if b < 0.0 {
        return Err(Error::Geometry(format!("need b ≥ 0, got {b}")));
    }
    RadialDensity::log_family(c1, c2, radius * radius - b * b)
}

/// `φ″(r³ + (R² − b²)r) + φ′(r² − R² + b²) − r² p(r)`.
pub fn ode_residual_cor6(
    d: &RadialDensity,
    radius: f64,
    b: f64,
    p: &Polynomial,
    r: f64,
) -> Result<f64> {
    let (dphi, d2phi) = d.derivs(r)?;
    let a = radius * radius - b * b;
    Ok(d2phi * (r * r * r + a * r) + dphi * (r * r - a) - r * r * p.eval(r))
}
