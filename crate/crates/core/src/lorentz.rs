//! Lorentzian linear algebra in L³ = (R³, dx² + dy² − dz²).
//!
//! Both the metric and the cross product are bilinear over the scalar field,
//! so the complex versions are holomorphic extensions (never conjugated).
//! The cross product is normalised by `⟨u × v, w⟩ = det(u, v, w)`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Real vector of L³.
pub type Vec3R = Vec3<f64>;
/// Complex vector, the analytic extension of [`Vec3R`].
pub type Vec3C = Vec3<Complex64>;

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }
}

impl<T: Scalar> Vec3<T> {
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn lift(v: Vec3R) -> Self {
        Self::new(T::lift(v.x), T::lift(v.y), T::lift(v.z))
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn dot(self, other: Self) -> T {
        lorentz_dot(self, other)
    }

    pub fn cross(self, other: Self) -> Self {
        lorentz_cross(self, other)
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

impl Mul<Vec3R> for f64 {
    type Output = Vec3R;
    fn mul(self, v: Vec3R) -> Vec3R {
        v.scale(self)
    }
}

/// `⟨u, v⟩ = u.x v.x + u.y v.y − u.z v.z`.
pub fn lorentz_dot<T: Scalar>(u: Vec3<T>, v: Vec3<T>) -> T {
    u.x * v.x + u.y * v.y - u.z * v.z
}

/// Lorentzian cross product with `⟨u × v, w⟩ = det(u, v, w)`.
pub fn lorentz_cross<T: Scalar>(u: Vec3<T>, v: Vec3<T>) -> Vec3<T> {
    Vec3::new(u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, -(u.x * v.y - u.y * v.x))
}

/// Determinant of the matrix with rows `u, v, w`.
pub fn det3<T: Scalar>(u: Vec3<T>, v: Vec3<T>, w: Vec3<T>) -> T {
    u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x)
}

impl Vec3R {
    pub fn norm_euclid(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn norm_sq_euclid(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Rescales by `|⟨v, v⟩|^{-1/2}`. `None` when `v` is (numerically) lightlike.
    pub fn lorentz_normalized(self) -> Option<Vec3R> {
        let q = lorentz_dot(self, self).abs();
        if q <= f64::EPSILON * self.norm_sq_euclid() || q == 0.0 {
            None
        } else {
            Some(self.scale(1.0 / q.sqrt()))
        }
    }

    pub fn causal_character(self, tol: f64) -> CausalCharacter {
        causal_character(self, tol)
    }
}

impl Vec3C {
    pub fn re(self) -> Vec3R {
        Vec3::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn im(self) -> Vec3R {
        Vec3::new(self.x.im, self.y.im, self.z.im)
    }

    pub fn max_abs(self) -> f64 {
        self.x.norm().max(self.y.norm()).max(self.z.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Default width of the lightlike band around ⟨v,v⟩ = 0.
pub fn default_lightlike_tol(v: Vec3R) -> f64 {
    1e-10 * (1.0 + v.norm_sq_euclid())
}

pub fn causal_character(v: Vec3R, tol: f64) -> CausalCharacter {
    let q = lorentz_dot(v, v);
    if q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// Row-major 3×3 real matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    /// The Gram matrix of the metric, diag(1, 1, −1).
    pub const ETA: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);

    pub fn apply(&self, p: Vec3R) -> Vec3R {
        let m = &self.0;
        Vec3::new(
            m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
        )
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Mat3(out)
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    /// `max |(Mᵀ η M − η)_ij|`; zero for a Lorentz transformation.
    pub fn lorentz_defect(&self) -> f64 {
        self.transpose().mul(&Mat3::ETA).mul(self).max_abs_diff(&Mat3::ETA)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vec3R {
        Vec3::new(x, y, z)
    }

    #[test]
    fn dot_on_basis_vectors() {
        assert_eq!(lorentz_dot(v(1.0, 0.0, 0.0), v(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(lorentz_dot(v(0.0, 0.0, 1.0), v(0.0, 0.0, 1.0)), -1.0);
        assert_eq!(lorentz_dot(v(1.0, 0.0, 1.0), v(1.0, 0.0, 1.0)), 0.0);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(lorentz_cross(v(0.0, 0.0, 1.0), v(0.0, 1.0, 0.0)), v(-1.0, 0.0, 0.0));
        assert_eq!(lorentz_cross(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0)), v(0.0, 0.0, -1.0));
        let u = v(0.3, -1.2, 2.0);
        assert_eq!(lorentz_cross(u, u), Vec3R::zero());
    }

    #[test]
    fn causal_classes() {
        let tol = 1e-10;
        assert_eq!(causal_character(v(1.0, 0.0, 0.0), tol), CausalCharacter::Spacelike);
        assert_eq!(causal_character(v(0.0, 0.0, 1.0), tol), CausalCharacter::Timelike);
        assert_eq!(causal_character(v(1.0, 0.0, 1.0), tol), CausalCharacter::Lightlike);
        let near_null = v(1.0, 0.0, 1.0 + 1e-13);
        assert_eq!(causal_character(near_null, default_lightlike_tol(near_null)), CausalCharacter::Lightlike);
    }

    #[test]
    fn complex_dot_is_bilinear_not_hermitian() {
        let i = Complex64::new(0.0, 1.0);
        let u = Vec3C::new(Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.1), Complex64::new(0.3, 0.0));
        let w = Vec3C::new(Complex64::new(0.2, -1.0), Complex64::new(2.0, 0.5), Complex64::new(-1.0, 1.0));
        let lhs = lorentz_dot(u.scale(i), w);
        let rhs = i * lorentz_dot(u, w);
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn lorentz_normalized_rejects_null() {
        assert!(v(1.0, 0.0, 1.0).lorentz_normalized().is_none());
        let n = v(0.0, 0.0, 2.0).lorentz_normalized().unwrap();
        assert_eq!(n, v(0.0, 0.0, 1.0));
    }

    #[test]
    fn eta_defect_of_boost_is_zero() {
        let t: f64 = 0.8;
        let boost = Mat3([[1.0, 0.0, 0.0], [0.0, t.cosh(), t.sinh()], [0.0, t.sinh(), t.cosh()]]);
        assert!(boost.lorentz_defect() < 1e-15);
        let shear = Mat3([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(shear.lorentz_defect() > 0.1);
    }
}
