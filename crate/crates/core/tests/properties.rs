use std::f64::consts::TAU;

use proptest::prelude::*;
use radvert::curves::Rotated;
use radvert::poly::Polynomial;
use radvert::{
    build_log_family, build_vertex_forcing, circle_dk_dt, count_vertices, ode_residual_cor6,
    phi_curvature, Circle, RadialDensity, RotSymmetricCurve,
};

fn density(kind: u8, param: f64) -> RadialDensity {
    match kind % 4 {
        0 => RadialDensity::gaussian(),
        1 => RadialDensity::linear(param),
        2 => RadialDensity::log_family(param, 0.0, 1.0 + param.abs()).unwrap(),
        _ => RadialDensity::constant(param),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_about_origin_preserves_weighted_curvature(
        kind in 0u8..4, param in -2.0f64..2.0,
        a in 0.5f64..2.0, frac in -0.6f64..0.6, m in 2u32..7,
        angle in 0.0f64..TAU, t in 0.0f64..TAU,
    ) {
        let d = density(kind, param);
        let curve = RotSymmetricCurve::new(a, a * frac, m).unwrap();
        let k = phi_curvature(&d, &curve, t).unwrap();
        let k_rot = phi_curvature(&d, &Rotated::new(curve, angle), t).unwrap();
        prop_assert!((k - k_rot).abs() <= 1e-10 * (1.0 + k.abs()));
    }

    #[test]
    fn log_family_level_does_not_matter(
        radius in 0.3f64..3.0, frac in 0.0f64..0.95, c1 in -3.0f64..3.0,
        c2 in -50.0f64..50.0, t in 0.0f64..TAU,
    ) {
        let b = frac * radius;
        let c = Circle::new(b, radius).unwrap();
        let base = build_log_family(radius, b, c1, 0.0).unwrap();
        let shifted = build_log_family(radius, b, c1, c2).unwrap();
        prop_assert_eq!(phi_curvature(&base, &c, t).unwrap(), phi_curvature(&shifted, &c, t).unwrap());
        prop_assert!((phi_curvature(&base, &c, t).unwrap() - (1.0 + c1) / radius).abs() < 1e-10);
    }

    #[test]
    fn forced_density_derivatives_agree_with_differences(
        n in 1usize..5, c1 in -1.0f64..1.0, s in 0.0f64..1.0,
    ) {
        let (radius, b) = (2.0, 1.0);
        let d = build_vertex_forcing(radius, b, n, None, c1, 0.0).unwrap();
        let r = 1.05 + 1.9 * s;
        let h = 1e-4;
        let fd1 = (d.phi(r + h).unwrap() - d.phi(r - h).unwrap()) / (2.0 * h);
        let fd2 = (d.dphi(r + h).unwrap() - d.dphi(r - h).unwrap()) / (2.0 * h);
        let (d1, d2) = d.derivs(r).unwrap();
        prop_assert!((fd1 - d1).abs() < 1e-6 * (1.0 + d1.abs()));
        prop_assert!((fd2 - d2).abs() < 1e-6 * (1.0 + d2.abs()));
    }

    #[test]
    fn forced_density_solves_its_ode_for_any_interior_roots(
        mut roots in proptest::collection::vec(0.05f64..0.95, 1..4),
        r_frac in 0.01f64..0.99,
    ) {
        let (radius, b) = (2.0, 1.0);
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() < 0.05);
        let roots: Vec<f64> = roots.iter().map(|f| radius - b + 2.0 * b * f).collect();
        let n = roots.len() + 1;
        let d = build_vertex_forcing(radius, b, n, Some(roots.clone()), 0.0, 0.0).unwrap();
        let p = Polynomial::from_roots(&roots);
        let r = radius - b + 2.0 * b * r_frac;
        let res = ode_residual_cor6(&d, radius, b, &p, r).unwrap();
        prop_assert!(res.abs() < 1e-9 * (1.0 + (r * r * p.eval(r)).abs()));
        prop_assert_eq!(count_vertices(&d, &Circle::new(b, radius).unwrap()).unwrap(), 2 * n as i64);
    }

    #[test]
    fn circles_about_the_origin_never_change(
        kind in 0u8..4, param in -2.0f64..2.0, radius in 0.2f64..4.0, t in 0.0f64..TAU,
    ) {
        let d = density(kind, param);
        let c = Circle::new(0.0, radius).unwrap();
        prop_assert_eq!(circle_dk_dt(&d, &c, t).unwrap(), 0.0);
    }
}
