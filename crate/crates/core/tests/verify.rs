use maxsurf::catalog::CatalogSurface;
use maxsurf::frames::BjorlingData;
use maxsurf::lorentz::{Vec3, Vec3R};
use maxsurf::motion::MotionGroup;
use maxsurf::surface::{Domain, Grid, SurfacePatch};
use maxsurf::verify::{self, BRANCH_TOL, DEFAULT_STEP};
use proptest::prelude::*;

fn patch(s: CatalogSurface, d: Domain) -> SurfacePatch {
    s.patch(d).unwrap()
}

fn h_at(p: &SurfacePatch, u: f64, v: f64) -> f64 {
    verify::fundamental_forms(p, u, v, DEFAULT_STEP).unwrap().mean_curvature()
}

#[test]
fn control_hyperboloid_has_unit_mean_curvature() {
    let d = Domain::new(-3.0, 3.0, 0.3, 1.5);
    let p = verify::control_surface(d);
    let grid = Grid::new(d, 13, 13);
    let (r, excluded) = verify::mean_curvature_residual(&p, &grid, DEFAULT_STEP, BRANCH_TOL);
    assert!(excluded.is_empty());
    assert!((r - 1.0).abs() < 1e-5, "{r}");
    assert!(!verify::check_mean_curvature(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-5).passed);
}

#[test]
fn scaled_hyperboloid() {
    for radius in [0.5, 2.0, 4.0] {
        let p = SurfacePatch::from_fn("hyperboloid", Domain::square(2.0), move |u, v| {
            Vec3::new(radius * v.sinh() * u.cos(), radius * v.sinh() * u.sin(), radius * v.cosh())
        });
        for (u, v) in [(0.2, 0.7), (-1.0, 1.2), (1.5, 0.4)] {
            assert!((h_at(&p, u, v) - 1.0 / radius).abs() < 1e-5 / radius, "R = {radius}");
        }
    }
}

#[test]
fn graph_vertex_curvature() {
    // a spacelike graph z = c (u² + v²) / 2 has |H| = c at its vertex
    for c in [0.1, 0.2, 0.5] {
        let p =
            SurfacePatch::from_fn("graph", Domain::square(0.5), move |u, v| Vec3::new(u, v, 0.5 * c * (u * u + v * v)));
        assert!((h_at(&p, 0.0, 0.0) - c).abs() < 1e-6, "c = {c}");
    }
    // a saddle z = c (u² − v²) / 2 is maximal at its vertex
    let p = SurfacePatch::from_fn("saddle", Domain::square(0.5), |u, v| Vec3::new(u, v, 0.2 * (u * u - v * v)));
    assert!(h_at(&p, 0.0, 0.0) < 1e-8);
}

#[test]
fn catalog_surfaces_are_maximal_and_conformal() {
    let d = Domain::new(-1.0, 1.0, -0.5, 0.5);
    let grid = Grid::new(d, 11, 11);
    for s in [
        CatalogSurface::EllipticCatenoid { a: 1.0 },
        CatalogSurface::HyperbolicCatenoid { a: 0.0 },
        CatalogSurface::BendingTimelike { a: 1.0 },
        CatalogSurface::HelicoidalTimelike { a: 1.0, lambda: 0.6 },
        CatalogSurface::HelicoidalSpacelikeI { a: 1.0, lambda: 2.0 },
    ] {
        let p = patch(s, d);
        let h = verify::check_mean_curvature(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-5);
        assert!(h.passed, "{s:?}: {}", h.max_residual);
        let c = verify::check_conformality(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-6);
        assert!(c.passed, "{s:?}: {}", c.max_residual);
    }
    // the orbit parametrization is maximal but not isothermal
    let p = patch(CatalogSurface::EnneperSecondKind { lambda: 1.0, mu: 0.0 }, d);
    assert!(verify::check_mean_curvature(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-5).passed);
}

#[test]
fn stretched_plane_is_not_conformal() {
    let p = SurfacePatch::from_fn("stretched", Domain::square(1.0), |u, v| Vec3::new(u, 2.0 * v, 0.0));
    let grid = Grid::new(p.domain, 5, 5);
    let c = verify::check_conformality(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-6);
    assert!(!c.passed);
    // E = 1, G = 4: |E − G| / ((E + G) / 2) = 6 / 5
    assert!((c.max_residual - 1.2).abs() < 1e-9);
}

#[test]
fn bjorling_recovery_checks() {
    let us: Vec<f64> = (0..=20).map(|k| -1.0 + 0.1 * k as f64).collect();
    for s in [CatalogSurface::BendingTimelike { a: 1.0 }, CatalogSurface::HelicoidalTimelike { a: 1.0, lambda: 0.6 }] {
        let (f, spec) = s.bjorling_source().unwrap();
        let data = BjorlingData::for_family(f, spec).unwrap();
        let r = verify::bjorling_recovery(&patch(s, Domain::square(1.5)), &data, &us);
        assert!(r.passed(), "{s:?}: {:?}", r.checks);
        assert!(r.get("recovery_curve").is_some() && r.get("recovery_normal").is_some());
    }
    let (f, spec) = CatalogSurface::BendingTimelike { a: 1.0 }.bjorling_source().unwrap();
    let data = BjorlingData::for_family(f, spec).unwrap();
    let wrong = patch(CatalogSurface::BendingTimelike { a: 2.0 }, Domain::square(1.5));
    let r = verify::bjorling_recovery(&wrong, &data, &us);
    assert!(!r.passed());
    // same core curve, different normal field
    assert!(r.get("recovery_curve").unwrap().passed);
    assert!(!r.get("recovery_normal").unwrap().passed);
}

#[test]
fn spacelike_masks() {
    let plane = SurfacePatch::from_fn("plane", Domain::square(1.0), |u, v| Vec3::new(u, v, 0.0));
    assert!(verify::spacelike_region(&plane, &Grid::new(plane.domain, 9, 9), BRANCH_TOL).all());

    let timelike = SurfacePatch::from_fn("timelike", Domain::square(1.0), |u, v| Vec3::new(u, 0.0, v));
    let m = verify::spacelike_region(&timelike, &Grid::new(timelike.domain, 5, 5), BRANCH_TOL);
    assert_eq!(m.count_false(), 25);

    let d = Domain::new(-1.0, 1.0, -1.0, 0.5);
    let lr = patch(CatalogSurface::LightlikeRotational { a: 0.0 }, d);
    assert!(verify::spacelike_region(&lr, &Grid::new(d, 21, 16), BRANCH_TOL).all());

    // the Enneper surface has a lightlike locus inside this square
    let d = Domain::square(1.5);
    let en = patch(CatalogSurface::EnneperSecondKind { lambda: 1.0, mu: 0.0 }, d);
    let m = verify::spacelike_region(&en, &Grid::new(d, 31, 31), BRANCH_TOL);
    assert!(m.count_false() > 0 && m.count_false() < m.mask.len());
    assert_eq!(m.degenerate_nodes().len(), m.count_false());
}

#[test]
fn lightlike_rotational_is_equivariant() {
    let d = Domain::new(-0.5, 0.5, -0.5, 0.3);
    let p = patch(CatalogSurface::LightlikeRotational { a: 0.0 }, d);
    let grid = Grid::new(d, 7, 7);
    let r = verify::equivariance(&p, &MotionGroup::RotLightlike, &[0.5, -0.3], &grid);
    assert!(r.passed(), "{:?}", r.checks);
    let r = verify::equivariance(&p, &MotionGroup::RotTimelike, &[0.5], &grid);
    assert!(!r.passed());
}

#[test]
fn max_deviation_of_a_translate() {
    let d = Domain::square(1.0);
    let p = patch(CatalogSurface::EllipticCatenoid { a: 1.0 }, d);
    let q = p.transformed(MotionGroup::RotTimelike.matrix(0.0), Vec3::new(0.0, 0.0, 0.25));
    assert!((verify::max_deviation(&p, &q, &Grid::new(d, 5, 5)) - 0.25).abs() < 1e-15);
}

#[test]
fn non_finite_values_fail() {
    let p = SurfacePatch::new("nan", Domain::square(1.0), |_, _| Ok(Vec3::new(f64::NAN, 0.0, 0.0)));
    let grid = Grid::new(p.domain, 5, 5);
    assert!(!verify::check_mean_curvature(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-5).passed);
    let p = SurfacePatch::from_fn("inf", Domain::square(1.0), |u, _| Vec3::new(1.0 / (u - u), 0.0, 0.0));
    assert!(!verify::check_mean_curvature(&p, &grid, DEFAULT_STEP, BRANCH_TOL, 1e-5).passed);
}

fn group() -> impl Strategy<Value = MotionGroup> {
    prop_oneof![
        Just(MotionGroup::RotTimelike),
        Just(MotionGroup::RotSpacelike),
        Just(MotionGroup::RotLightlike),
        (0.1..0.9_f64).prop_map(|lambda| MotionGroup::ScrewTimelike { lambda }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mean_curvature_is_motion_invariant(
        g in group(),
        th in -1.0..1.0_f64,
        shift in (-2.0..2.0_f64, -2.0..2.0_f64, -2.0..2.0_f64),
        u in -1.0..1.0_f64,
        v in 0.4..1.2_f64,
    ) {
        let p = verify::control_surface(Domain::square(2.0));
        let q = p.transformed(g.matrix(th), Vec3R::new(shift.0, shift.1, shift.2));
        prop_assert!((h_at(&q, u, v) - 1.0).abs() < 1e-4);
        let m = patch(CatalogSurface::HelicoidalTimelike { a: 1.0, lambda: 0.6 }, Domain::square(2.0));
        let mq = m.transformed(g.matrix(th), Vec3R::new(shift.0, shift.1, shift.2));
        prop_assert!(h_at(&mq, u, v - 0.8) < 1e-4);
    }
}
