use std::f64::consts::PI;

use maxsurf::bjorling::{reference_normal, solve_bjorling, BjorlingError, BjorlingSolver, QuadratureSpec};
use maxsurf::catalog::{eval_surface, CatalogSurface};
use maxsurf::frames::{make_frame, make_normal_field, BjorlingData, CurveFamily, FrameError, NormalFieldSpec};
use maxsurf::lorentz::{lorentz_dot, Vec3, Vec3R};
use maxsurf::surface::Domain;
use proptest::prelude::*;

fn close(a: Vec3R, b: Vec3R, tol: f64) {
    assert!((a - b).max_abs() <= tol, "{a:?} vs {b:?} (tol {tol:e})");
}

fn families() -> [CurveFamily; 6] {
    [
        CurveFamily::CircleTimelike,
        CurveFamily::CircleSpacelike,
        CurveFamily::CircleLightlike,
        CurveFamily::HelixTimelike { lambda: 0.6 },
        CurveFamily::HelixSpacelikeI { lambda: 2.0 },
        CurveFamily::HelixSpacelikeII { lambda: 1.0 },
    ]
}

fn spec_for(f: CurveFamily, a: f64) -> NormalFieldSpec {
    if f == CurveFamily::CircleLightlike {
        NormalFieldSpec::Constant(a)
    } else {
        NormalFieldSpec::Linear(a)
    }
}

#[test]
fn curve_examples() {
    close(CurveFamily::CircleTimelike.curve(0.0), Vec3::new(1.0, 0.0, 0.0), 0.0);
    close(CurveFamily::CircleLightlike.curve(0.0), Vec3::new(-1.0, 0.0, 0.0), 0.0);
    close(CurveFamily::HelixTimelike { lambda: 0.6 }.curve(PI), Vec3::new(-1.0, 0.0, 0.6 * PI), 1e-15);
}

#[test]
fn frame_examples() {
    let f = CurveFamily::CircleTimelike;
    close(f.normal(0.0), Vec3::new(-1.0, 0.0, 0.0), 0.0);
    close(f.binormal(0.0), Vec3::new(0.0, 0.0, 1.0), 0.0);
    close(CurveFamily::CircleLightlike.binormal(1.0), Vec3::new(0.0, 1.0, 1.0), 0.0);
    let h = 0.5_f64.sqrt();
    close(CurveFamily::HelixSpacelikeII { lambda: 1.0 }.binormal(0.0), Vec3::new(h, -h, 0.0), 1e-15);
}

#[test]
fn normal_field_examples() {
    let v0 = |f: CurveFamily, spec| f.normal_field(spec, 0.0_f64);
    close(v0(CurveFamily::CircleTimelike, NormalFieldSpec::Linear(1.3)), Vec3::new(0.0, 0.0, 1.0), 1e-15);
    close(v0(CurveFamily::CircleSpacelike, NormalFieldSpec::Linear(2.0)), Vec3::new(0.0, 0.0, 1.0), 1e-15);
    close(
        v0(CurveFamily::HelixTimelike { lambda: 0.6 }, NormalFieldSpec::Linear(1.0)),
        Vec3::new(0.0, -0.75, -1.25),
        1e-15,
    );
}

#[test]
fn frames_are_orthonormal() {
    for f in families() {
        let fr = make_frame(f).unwrap();
        for k in -10..=10 {
            let t = 0.2 * k as f64;
            let (tv, n, b) = (fr.tangent(t), fr.normal(t), fr.binormal(t));
            assert!((lorentz_dot(tv, tv) - 1.0).abs() < 1e-12, "{f:?}");
            assert!(lorentz_dot(tv, n).abs() < 1e-12, "{f:?}");
            assert!(lorentz_dot(tv, b).abs() < 1e-12, "{f:?}");
            if f == CurveFamily::CircleLightlike {
                // null pair with ⟨n, b⟩ = −1/2
                assert!(lorentz_dot(n, n).abs() < 1e-12);
                assert!(lorentz_dot(b, b).abs() < 1e-12);
                assert!((lorentz_dot(n, b) + 0.5).abs() < 1e-12);
                let (e2, e3) = (fr.e2(t).unwrap(), fr.e3(t).unwrap());
                assert!((lorentz_dot(e2, e2) - 1.0).abs() < 1e-12);
                assert!((lorentz_dot(e3, e3) + 1.0).abs() < 1e-12);
                assert!(lorentz_dot(e2, e3).abs() < 1e-12);
            } else {
                let (nn, bb) = (lorentz_dot(n, n), lorentz_dot(b, b));
                assert!((nn.abs() - 1.0).abs() < 1e-12 && (bb.abs() - 1.0).abs() < 1e-12, "{f:?}");
                assert!((nn * bb + 1.0).abs() < 1e-12, "exactly one of n, b is timelike for {f:?}");
                assert!(lorentz_dot(n, b).abs() < 1e-12, "{f:?}");
                assert!(fr.e2(t).is_none());
            }
        }
    }
}

#[test]
fn velocity_is_the_derivative() {
    for f in families() {
        for t in [-1.1, 0.0, 0.4, 1.7] {
            let h = 1e-5;
            let fd = (f.curve(t + h) - f.curve(t - h)).scale(0.5 / h);
            close(fd, f.velocity(t), 1e-8);
        }
    }
}

#[test]
fn invalid_data_is_rejected() {
    assert!(matches!(
        make_normal_field(CurveFamily::CircleLightlike, NormalFieldSpec::Linear(1.0)),
        Err(FrameError::NonIntegrableLightlike)
    ));
    assert!(matches!(
        make_normal_field(CurveFamily::CircleTimelike, NormalFieldSpec::Linear(0.0)),
        Err(FrameError::NonPositiveRate(_))
    ));
    assert!(matches!(make_frame(CurveFamily::HelixTimelike { lambda: 1.5 }), Err(FrameError::InvalidPitch { .. })));
    assert!(matches!(make_frame(CurveFamily::HelixSpacelikeI { lambda: 0.5 }), Err(FrameError::InvalidPitch { .. })));
    assert!(matches!(
        make_normal_field(CurveFamily::CircleTimelike, NormalFieldSpec::Constant(f64::NAN)),
        Err(FrameError::NonFinite(_))
    ));
}

#[test]
fn circle_normal_fields_are_future_pointing() {
    for f in [CurveFamily::CircleTimelike, CurveFamily::CircleSpacelike, CurveFamily::CircleLightlike] {
        let d = BjorlingData::for_family(f, spec_for(f, 0.8)).unwrap();
        for k in -10..=10 {
            assert!(d.residuals(0.3 * k as f64).time_component > 0.0, "{f:?}");
        }
    }
}

#[test]
fn solver_matches_closed_form_examples() {
    let d = BjorlingData::for_family(CurveFamily::CircleTimelike, NormalFieldSpec::Linear(1.0)).unwrap();
    let s = BjorlingSolver::new(d, QuadratureSpec::default()).unwrap();
    let cat = CatalogSurface::BendingTimelike { a: 1.0 };
    close(s.point(0.0, 0.3).unwrap(), eval_surface(&cat, 0.0, 0.3), 1e-8);
    for a in [0.0, 0.7, -1.2] {
        let d = BjorlingData::for_family(CurveFamily::CircleTimelike, NormalFieldSpec::Constant(a)).unwrap();
        let p = solve_bjorling(d, QuadratureSpec::default(), Domain::square(1.0)).unwrap();
        let cat = CatalogSurface::EllipticCatenoid { a };
        for i in 0..10 {
            for j in 0..10 {
                let (u, v) = (-1.0 + 0.2 * i as f64, -0.9 + 0.2 * j as f64);
                close(p.point(u, v).unwrap(), eval_surface(&cat, u, v), 1e-8);
            }
        }
    }
}

#[test]
fn plane_case() {
    let d = BjorlingData::for_family(CurveFamily::CircleTimelike, NormalFieldSpec::Constant(0.0)).unwrap();
    let p = solve_bjorling(d.clone(), QuadratureSpec::default(), Domain::square(1.0)).unwrap();
    for (u, v) in [(0.3, 0.5), (-0.8, -0.9), (1.0, 0.1)] {
        assert!(p.point(u, v).unwrap().z.abs() < 1e-15);
    }
    let n = reference_normal(&d, &p, PI / 4.0).unwrap();
    assert!(n.x.abs() < 1e-8 && n.y.abs() < 1e-8 && (n.z.abs() - 1.0).abs() < 1e-8);
}

#[test]
fn reference_normal_recovers_the_field() {
    for (f, a) in [(CurveFamily::CircleTimelike, 1.0), (CurveFamily::CircleSpacelike, 2.0)] {
        let d = BjorlingData::for_family(f, NormalFieldSpec::Linear(a)).unwrap();
        let p = solve_bjorling(d.clone(), QuadratureSpec::default(), Domain::square(1.0)).unwrap();
        for u in [0.0, -0.6, 0.9] {
            let n = reference_normal(&d, &p, u).unwrap();
            close(n, d.normal_at(u), 1e-6);
        }
        let n0 = reference_normal(&d, &p, 0.0).unwrap();
        close(n0, Vec3::new(0.0, 0.0, 1.0), 1e-6);
    }
}

#[test]
fn rules_agree_and_fallback_covers_large_v() {
    let d =
        BjorlingData::for_family(CurveFamily::HelixSpacelikeI { lambda: 2.0 }, NormalFieldSpec::Linear(1.0)).unwrap();
    let cat = CatalogSurface::HelicoidalSpacelikeI { a: 1.0, lambda: 2.0 };
    let gl = BjorlingSolver::new(d.clone(), QuadratureSpec::gauss_legendre(64)).unwrap();
    let simpson = BjorlingSolver::new(d.clone(), QuadratureSpec::adaptive_simpson(1e-12)).unwrap();
    let dflt = BjorlingSolver::new(d, QuadratureSpec::default()).unwrap();
    for (u, v) in [(0.2, 0.7), (-0.9, -1.0), (0.5, 2.5), (-0.3, -3.0)] {
        let x = eval_surface(&cat, u, v);
        let scale = x.max_abs().max(1.0);
        close(simpson.point(u, v).unwrap(), x, 1e-9 * scale);
        close(dflt.point(u, v).unwrap(), x, 1e-9 * scale);
        if v.abs() <= 1.0 {
            close(gl.point(u, v).unwrap(), x, 1e-9);
        }
    }
}

#[test]
fn invalid_quadrature_is_rejected() {
    let d = BjorlingData::for_family(CurveFamily::CircleTimelike, NormalFieldSpec::Linear(1.0)).unwrap();
    assert!(matches!(
        BjorlingSolver::new(d.clone(), QuadratureSpec::gauss_legendre(2)),
        Err(BjorlingError::InvalidQuadrature(_))
    ));
    assert!(matches!(
        BjorlingSolver::new(d, QuadratureSpec::adaptive_simpson(-1.0)),
        Err(BjorlingError::InvalidQuadrature(_))
    ));
}

#[test]
fn quadrature_spec_json_shape() {
    let q: QuadratureSpec = serde_json::from_str(r#"{"rule": "gauss_legendre", "nodes": 32}"#).unwrap();
    assert_eq!(q, QuadratureSpec::gauss_legendre(32));
    let back = serde_json::to_value(QuadratureSpec::default()).unwrap();
    assert_eq!(back["rule"], "gauss_legendre");
    assert_eq!(back["nodes"], 64);
}

fn family_and_rate() -> impl Strategy<Value = (CurveFamily, f64)> {
    (0usize..6, 0.2..2.5_f64).prop_map(|(k, a)| (families()[k], a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bjorling_data_invariants((f, a) in family_and_rate(), t in -2.0..2.0_f64) {
        let d = BjorlingData::for_family(f, spec_for(f, a)).unwrap();
        let r = d.residuals(t);
        let v = d.normal_at(t);
        let scale = v.norm_sq_euclid().max(1.0);
        prop_assert!(r.speed_sq > 0.0);
        prop_assert!(r.unit < 1e-12 * scale);
        prop_assert!(r.orthogonality < 1e-12 * scale * d.residuals(t).speed_sq.sqrt().max(1.0));
    }

    #[test]
    fn base_point_does_not_change_the_surface(
        (f, a) in family_and_rate(), u0 in -1.0..1.0_f64, u in -1.0..1.0_f64, v in -1.0..1.0_f64
    ) {
        let d = BjorlingData::for_family(f, spec_for(f, a)).unwrap();
        let s0 = BjorlingSolver::new(d.clone(), QuadratureSpec::default()).unwrap();
        let s1 = BjorlingSolver::new(d.with_base(u0), QuadratureSpec::default()).unwrap();
        let (x0, x1) = (s0.point(u, v).unwrap(), s1.point(u, v).unwrap());
        prop_assert!((x0 - x1).max_abs() < 1e-9 * x0.max_abs().max(1.0));
    }

    #[test]
    fn solution_interpolates_the_core_curve((f, a) in family_and_rate(), u in -2.0..2.0_f64) {
        let d = BjorlingData::for_family(f, spec_for(f, a)).unwrap();
        let s = BjorlingSolver::new(d.clone(), QuadratureSpec::default()).unwrap();
        let x = s.point(u, 0.0).unwrap();
        prop_assert!((x - d.curve_at(u)).max_abs() < 1e-12 * x.max_abs().max(1.0));
    }

    #[test]
    fn catalog_is_the_bjorling_solution((f, a) in family_and_rate(), u in -1.0..1.0_f64, v in -1.0..1.0_f64) {
        let spec = spec_for(f, a);
        let cat = CatalogSurface::from_bjorling(f, spec).unwrap();
        let s = BjorlingSolver::new(BjorlingData::for_family(f, spec).unwrap(), QuadratureSpec::default()).unwrap();
        let (x, y) = (s.point(u, v).unwrap(), eval_surface(&cat, u, v));
        prop_assert!((x - y).max_abs() < 1e-8 * x.max_abs().max(1.0), "{:?} at ({}, {}): {:?} vs {:?}", cat, u, v, x, y);
    }
}
