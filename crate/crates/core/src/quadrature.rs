//! Complex line integrals: Gauss-Legendre and adaptive Simpson on straight
//! segments, and the periodic trapezoidal rule on circles.

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul, Sub};

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::lorentz::Vec3C;

/// Values that can be accumulated by a quadrature rule.
pub trait Quantity: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Complex64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Quantity for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Quantity for Vec3C {
    fn zero() -> Self {
        Vec3C::zero()
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
}

/// Fixed-order Gauss-Legendre rule, nodes on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendreRule {
    pairs: Vec<(f64, f64)>,
}

impl GaussLegendreRule {
    pub fn new(nodes: usize) -> Self {
        let n = NonZeroUsize::new(nodes.max(1)).expect("nonzero");
        let pairs = GaussLegendre::new(n).as_node_weight_pairs().to_vec();
        Self { pairs }
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// `∫_a^b f(w) dw` along the straight segment.
    pub fn integrate<Q: Quantity>(&self, a: Complex64, b: Complex64, f: impl Fn(Complex64) -> Q) -> Q {
        let half = (b - a) * 0.5;
        let mid = (a + b) * 0.5;
        let mut acc = Q::zero();
        for &(x, w) in &self.pairs {
            acc = acc + f(mid + half * x) * Complex64::new(w, 0.0);
        }
        acc * half
    }
}

/// Outcome of an adaptive integration that did not meet its tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unconverged {
    pub estimate: f64,
}

/// Adaptive Simpson along the segment `a → b`, parametrised by `s ∈ [0, 1]`.
pub fn adaptive_simpson<Q: Quantity>(
    a: Complex64,
    b: Complex64,
    f: impl Fn(Complex64) -> Q,
    tol: f64,
    max_depth: u32,
) -> Result<Q, Unconverged> {
    let span = b - a;
    let g = |s: f64| f(a + span * s);
    let (f0, fm, f1) = (g(0.0), g(0.5), g(1.0));
    let whole = simpson(f0, fm, f1, 1.0);
    let mut worst = 0.0_f64;
    let total = simpson_step(&g, 0.0, 1.0, f0, fm, f1, whole, tol, max_depth, &mut worst);
    if worst > tol {
        Err(Unconverged { estimate: worst })
    } else {
        Ok(total * span)
    }
}

fn simpson<Q: Quantity>(fa: Q, fm: Q, fb: Q, width: f64) -> Q {
    (fa + fm * Complex64::new(4.0, 0.0) + fb) * Complex64::new(width / 6.0, 0.0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<Q: Quantity>(
    g: &impl Fn(f64) -> Q,
    lo: f64,
    hi: f64,
    flo: Q,
    fmid: Q,
    fhi: Q,
    whole: Q,
    tol: f64,
    depth: u32,
    worst: &mut f64,
) -> Q {
    let mid = 0.5 * (lo + hi);
    let (lm, rm) = (0.5 * (lo + mid), 0.5 * (mid + hi));
    let (flm, frm) = (g(lm), g(rm));
    let left = simpson(flo, flm, fmid, mid - lo);
    let right = simpson(fmid, frm, fhi, hi - mid);
    let delta = left + right - whole;
    let err = delta.magnitude() / 15.0;
    if err <= tol || depth == 0 {
        if err > tol {
            *worst = worst.max(err);
        }
        // Richardson correction
        return left + right + delta * Complex64::new(1.0 / 15.0, 0.0);
    }
    let half_tol = 0.5 * tol;
    simpson_step(g, lo, mid, flo, flm, fmid, left, half_tol, depth - 1, worst)
        + simpson_step(g, mid, hi, fmid, frm, fhi, right, half_tol, depth - 1, worst)
}

/// `∮ f(z) dz` over the counterclockwise circle `|z − center| = radius` with
/// `nodes` equispaced points.
pub fn trapezoid_circle<Q: Quantity>(center: Complex64, radius: f64, nodes: usize, f: impl Fn(Complex64) -> Q) -> Q {
    let n = nodes.max(1);
    let dtheta = 2.0 * PI / n as f64;
    let mut acc = Q::zero();
    for k in 0..n {
        let e = Complex64::from_polar(1.0, dtheta * k as f64);
        let z = center + e * radius;
        // dz = i r e^{iθ} dθ
        acc = acc + f(z) * (Complex64::i() * e * radius);
    }
    acc * Complex64::new(dtheta, 0.0)
}
