//! Curvature with radial density for closed plane curves.
//!
//! A plane carrying a radial density `e^φ(r)` bends curves differently from the
//! Euclidean plane: the weighted curvature is `k_φ = k − dφ/dn`. This crate
//! evaluates `k_φ` on circles, rotationally symmetric polar curves and
//! Fourier-fitted sampled curves, finds the vertices (critical points of `k_φ`),
//! and builds the explicit circle/density pairs with 2, 4, …, 2n vertices,
//! constant weighted curvature, or exactly two vertices for any non-constant
//! density.
//!
//! Conventions shared by every module:
//! - curves are oriented counterclockwise;
//! - the normal is the leftward unit normal `(−y′, x′)/|α′|`, which points
//!   toward the center of a circle, so a circle of radius `R` has `k = +1/R`.

// `!(x > 0.0)` guards are written to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constructors;
pub mod curvature;
pub mod curves;
pub mod density;
pub mod error;
pub mod poly;
pub mod quadrature;
pub mod scene;
pub mod suites;
pub mod vec2;
pub mod vertices;

pub use constructors::{
    find_two_vertex_circle, force_vertex_count, make_constant_curvature_density,
    make_gauss_counterexample, scan_nonconstancy, CounterexampleCertificate, FactorSign,
};
pub use curvature::{
    circle_dk_dt, circle_phi_curvature, dk_phi_dt_fd, dk_phi_dt_numeric, euclidean_curvature,
    gauss_phi_curvature, normal_derivative, phi_curvature, sample, CurvatureSample,
};
pub use curves::{
    min_origin_distance, AnyCurve, Circle, FourierCurve, Jet, Orientation, ParametricCurve,
    RotSymmetricCurve, Rotated,
};
pub use density::{build_log_family, build_vertex_forcing, ode_residual_cor6, RadialDensity};
pub use error::{Error, Result};
pub use vec2::Vec2;
pub use vertices::{
    check_four_vertex, count_vertices, find_vertices, find_vertices_with, Route, Status, Vertex,
    VertexKind, VertexOptions, VertexReport,
};

/// Version tag written into every serialized record.
pub const FORMAT_VERSION: u32 = 1;

/// Map `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order always matches input order.
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
