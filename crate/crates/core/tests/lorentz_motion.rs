use maxsurf::lorentz::{
    causal_character, default_lightlike_tol, det3, lorentz_cross, lorentz_dot, CausalCharacter, Mat3, Vec3, Vec3C,
    Vec3R,
};
use maxsurf::motion::MotionGroup;
use num_complex::Complex64;
use proptest::prelude::*;

fn v(x: f64, y: f64, z: f64) -> Vec3R {
    Vec3::new(x, y, z)
}

fn vec3() -> impl Strategy<Value = Vec3R> {
    (-3.0..3.0_f64, -3.0..3.0_f64, -3.0..3.0_f64).prop_map(|(x, y, z)| v(x, y, z))
}

fn group() -> impl Strategy<Value = MotionGroup> {
    prop_oneof![
        Just(MotionGroup::RotTimelike),
        Just(MotionGroup::RotSpacelike),
        Just(MotionGroup::RotLightlike),
        (0.05..0.95_f64).prop_map(|lambda| MotionGroup::ScrewTimelike { lambda }),
    ]
}

/// Mᵀ η M computed entrywise, independent of `Mat3::lorentz_defect`.
fn eta_defect(m: &Mat3) -> f64 {
    let eta = [1.0, 1.0, -1.0];
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            let s: f64 = (0..3).map(|k| m.0[k][i] * eta[k] * m.0[k][j]).sum();
            worst = worst.max((s - if i == j { eta[i] } else { 0.0 }).abs());
        }
    }
    worst
}

fn det(m: &Mat3) -> f64 {
    let r = m.0;
    det3(v(r[0][0], r[0][1], r[0][2]), v(r[1][0], r[1][1], r[1][2]), v(r[2][0], r[2][1], r[2][2]))
}

#[test]
fn metric_signature() {
    assert_eq!(lorentz_dot(v(1.0, 0.0, 0.0), v(1.0, 0.0, 0.0)), 1.0);
    assert_eq!(lorentz_dot(v(0.0, 0.0, 1.0), v(0.0, 0.0, 1.0)), -1.0);
    assert_eq!(lorentz_dot(v(1.0, 0.0, 1.0), v(1.0, 0.0, 1.0)), 0.0);
}

#[test]
fn cross_product_examples() {
    assert_eq!(lorentz_cross(v(0.0, 0.0, 1.0), v(0.0, 1.0, 0.0)), v(-1.0, 0.0, 0.0));
    assert_eq!(lorentz_cross(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0)), v(0.0, 0.0, -1.0));
    let u = v(0.3, -1.2, 2.0);
    assert_eq!(lorentz_cross(u, u), Vec3R::zero());
}

#[test]
fn causal_characters() {
    let c = |x: Vec3R| causal_character(x, default_lightlike_tol(x));
    assert_eq!(c(v(1.0, 0.0, 0.0)), CausalCharacter::Spacelike);
    assert_eq!(c(v(0.0, 0.0, 1.0)), CausalCharacter::Timelike);
    assert_eq!(c(v(1.0, 0.0, 1.0)), CausalCharacter::Lightlike);
}

#[test]
fn normalization() {
    let n = v(0.0, 3.0, 5.0).lorentz_normalized().unwrap();
    assert!((lorentz_dot(n, n) + 1.0).abs() < 1e-15);
    assert!(v(1.0, 0.0, 1.0).lorentz_normalized().is_none());
}

#[test]
fn lightlike_group_fixes_its_axis() {
    for th in [-2.0, -0.5, 0.7, 3.0] {
        let m = MotionGroup::RotLightlike.matrix(th);
        assert!((m.apply(v(1.0, 0.0, 1.0)) - v(1.0, 0.0, 1.0)).max_abs() < 1e-15);
    }
}

#[test]
fn screw_translation_is_along_the_axis() {
    let g = MotionGroup::ScrewTimelike { lambda: 0.6 };
    assert!((g.apply(1.5, Vec3R::zero()) - v(0.0, 0.0, 0.9)).max_abs() < 1e-15);
    assert_eq!(MotionGroup::RotTimelike.translation(1.5), Vec3R::zero());
}

proptest! {
    #[test]
    fn triple_product_is_determinant(a in vec3(), b in vec3(), c in vec3()) {
        let lhs = lorentz_dot(lorentz_cross(a, b), c);
        prop_assert!((lhs - det3(a, b, c)).abs() < 1e-12);
    }

    #[test]
    fn cross_is_orthogonal_and_antisymmetric(a in vec3(), b in vec3()) {
        let c = lorentz_cross(a, b);
        prop_assert!(lorentz_dot(c, a).abs() < 1e-12);
        prop_assert!(lorentz_dot(c, b).abs() < 1e-12);
        prop_assert!((c + lorentz_cross(b, a)).max_abs() < 1e-15);
    }

    #[test]
    fn lagrange_identity(a in vec3(), b in vec3()) {
        let c = lorentz_cross(a, b);
        let rhs = lorentz_dot(a, b).powi(2) - lorentz_dot(a, a) * lorentz_dot(b, b);
        prop_assert!((lorentz_dot(c, c) - rhs).abs() < 1e-10);
    }

    #[test]
    fn complex_lift_matches_real(a in vec3(), b in vec3()) {
        let (ca, cb) = (Vec3C::lift(a), Vec3C::lift(b));
        prop_assert_eq!(lorentz_cross(ca, cb).re(), lorentz_cross(a, b));
        prop_assert_eq!(lorentz_dot(ca, cb), Complex64::new(lorentz_dot(a, b), 0.0));
    }

    #[test]
    fn group_matrices_are_proper_lorentz(g in group(), th in -3.0..3.0_f64) {
        let m = g.matrix(th);
        prop_assert!(eta_defect(&m) < 1e-12);
        prop_assert!((m.lorentz_defect() - eta_defect(&m)).abs() < 1e-15);
        prop_assert!((det(&m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_parameter_group_law(g in group(), s in -1.5..1.5_f64, t in -1.5..1.5_f64, p in vec3()) {
        let composed = g.apply(s, g.apply(t, p));
        prop_assert!((composed - g.apply(s + t, p)).max_abs() < 1e-12);
        prop_assert!((g.apply(0.0, p) - p).max_abs() == 0.0);
    }

    #[test]
    fn motions_preserve_the_metric(g in group(), th in -2.0..2.0_f64, a in vec3(), b in vec3()) {
        let m = g.matrix(th);
        let before = lorentz_dot(a, b);
        let after = lorentz_dot(m.apply(a), m.apply(b));
        prop_assert!((before - after).abs() < 1e-10 * (1.0 + a.norm_euclid() * b.norm_euclid()));
    }

    #[test]
    fn motions_commute_with_cross(g in group(), th in -2.0..2.0_f64, a in vec3(), b in vec3()) {
        let m = g.matrix(th);
        let lhs = lorentz_cross(m.apply(a), m.apply(b));
        let rhs = m.apply(lorentz_cross(a, b));
        prop_assert!((lhs - rhs).max_abs() < 1e-9 * (1.0 + a.norm_euclid() * b.norm_euclid()));
    }
}
