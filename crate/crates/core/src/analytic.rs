//! Scalars that admit the elementary functions used by the closed forms, and
//! holomorphic maps into complex 3-space.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::lorentz::Vec3C;

/// A field scalar on which every closed form in this crate can be evaluated.
///
/// Implemented for `f64` (values on the core curve) and `Complex64` (the
/// holomorphic extension). Each formula is written once, generically, so the
/// complex extension is literally the real formula with `z` substituted.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn lift(x: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn exp(self) -> Self;

    fn zero() -> Self {
        Self::lift(0.0)
    }

    fn one() -> Self {
        Self::lift(1.0)
    }

    fn scale(self, k: f64) -> Self {
        self * Self::lift(k)
    }
}

impl Scalar for f64 {
    fn lift(x: f64) -> Self {
        x
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
}

impl Scalar for Complex64 {
    fn lift(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn sin(self) -> Self {
        Complex64::sin(self)
    }
    fn cos(self) -> Self {
        Complex64::cos(self)
    }
    fn sinh(self) -> Self {
        Complex64::sinh(self)
    }
    fn cosh(self) -> Self {
        Complex64::cosh(self)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
}

/// Evaluator of a closed-form holomorphic map `C -> C^3`.
pub trait AnalyticMap: Send + Sync {
    fn eval(&self, z: Complex64) -> Vec3C;
}

impl<F> AnalyticMap for F
where
    F: Fn(Complex64) -> Vec3C + Send + Sync,
{
    fn eval(&self, z: Complex64) -> Vec3C {
        self(z)
    }
}

pub type SharedMap = Arc<dyn AnalyticMap>;

/// Holomorphic (or meromorphic) scalar function `C -> C`.
pub type ScalarFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// `sin(x) / x`, accurate near zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}
