//! Holomorphic 1-forms `φ_k dz`, Weierstrass data `(g, ω = f dz)`, the Gauss
//! map, contour periods, the duality with Euclidean minimal surfaces and the
//! total curvature of the dual surface.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::ScalarFn;
use crate::catalog::CatalogSurface;
use crate::frames::BjorlingData;
use crate::lorentz::{lorentz_cross, Vec3, Vec3R};
use crate::quadrature::trapezoid_circle;

type C = Complex64;

const I: C = C::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeierstrassError {
    #[error("{0} has no Weierstrass forms in this library")]
    Unsupported(&'static str),
    #[error("{family} has no {chart:?} chart")]
    ChartUnavailable { family: &'static str, chart: Chart },
    #[error("φ1 − iφ2 vanishes identically")]
    DegenerateTriple,
    #[error("|g| = 1 at z = {z}: Gauss map degenerates")]
    DegenerateGaussMap { z: C },
    #[error("form index must be 1, 2 or 3, got {0}")]
    BadIndex(usize),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("period of φ{k} not converged at {nodes} nodes (change {change:e})")]
    PeriodNonConvergence { k: usize, nodes: usize, change: f64 },
    #[error("invalid annulus [{r_in}, {r_out}] or grid {nr}×{ntheta}")]
    InvalidAnnulus { r_in: f64, r_out: f64, nr: usize, ntheta: usize },
    #[error("non-finite curvature density near |z| = {r}")]
    CurvatureNonFinite { r: f64 },
}

/// Coordinate in which the forms are written: the Björling variable `z`, or
/// `w = e^z` on `ℂ ∖ {0}` (forms then carry the `dz = dw / w` factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    Exp,
    Punctured,
}

/// Maximal surfaces in L³ satisfy `φ1² + φ2² − φ3² = 0`; minimal surfaces in
/// E³ satisfy `ψ1² + ψ2² + ψ3² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Maximal,
    Minimal,
}

/// Coefficients of three holomorphic 1-forms.
#[derive(Clone)]
pub struct FormTriple {
    pub phi: [ScalarFn; 3],
    pub chart: Chart,
    pub flavor: Flavor,
    /// Isolated singularities in the chart (the puncture for `Punctured`).
    pub singularities: Vec<C>,
}

impl fmt::Debug for FormTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormTriple")
            .field("chart", &self.chart)
            .field("flavor", &self.flavor)
            .field("singularities", &self.singularities)
            .finish_non_exhaustive()
    }
}

impl FormTriple {
    pub fn new(phi: [ScalarFn; 3], chart: Chart, flavor: Flavor) -> Self {
        let singularities = match chart {
            Chart::Exp => Vec::new(),
            Chart::Punctured => vec![C::new(0.0, 0.0)],
        };
        Self { phi, chart, flavor, singularities }
    }

    pub fn eval(&self, z: C) -> [C; 3] {
        [(self.phi[0])(z), (self.phi[1])(z), (self.phi[2])(z)]
    }

    /// `|φ1² + φ2² ∓ φ3²|` for the flavor's metric.
    pub fn null_residual(&self, z: C) -> f64 {
        let [a, b, c] = self.eval(z);
        match self.flavor {
            Flavor::Maximal => (a * a + b * b - c * c).norm(),
            Flavor::Minimal => (a * a + b * b + c * c).norm(),
        }
    }

    pub fn component(&self, k: usize) -> Result<&ScalarFn, WeierstrassError> {
        match k {
            1..=3 => Ok(&self.phi[k - 1]),
            _ => Err(WeierstrassError::BadIndex(k)),
        }
    }
}

fn sfn(f: impl Fn(C) -> C + Send + Sync + 'static) -> ScalarFn {
    Arc::new(f)
}

/// `φ = α′ + i V × α′` for arbitrary Björling data, in the `z` chart.
pub fn forms_from_data(data: &BjorlingData) -> FormTriple {
    let make = |k: usize| {
        let d = data.clone();
        sfn(move |z| {
            let da = d.velocity.eval(z);
            let p = da + lorentz_cross(d.normal.eval(z), da).scale(I);
            [p.x, p.y, p.z][k]
        })
    };
    FormTriple::new([make(0), make(1), make(2)], Chart::Exp, Flavor::Maximal)
}

/// Closed-form holomorphic 1-forms of a catalog surface.
pub fn forms_for(s: &CatalogSurface, chart: Chart) -> Result<FormTriple, WeierstrassError> {
    use CatalogSurface as S;
    let unavailable = || WeierstrassError::ChartUnavailable { family: s.name(), chart };
    let phi: [ScalarFn; 3] = match (*s, chart) {
        (S::BendingTimelike { a }, Chart::Exp) => [
            sfn(move |z| -z.sin() - I * z.cos() * (z * a).cosh()),
            sfn(move |z| z.cos() - I * z.sin() * (z * a).cosh()),
            sfn(move |z| I * (z * a).sinh()),
        ],
        (S::BendingSpacelike { a }, Chart::Exp) => [
            sfn(move |z| -I * (z * a).cosh()),
            sfn(move |z| z.cosh() - I * z.sinh() * (z * a).sinh()),
            sfn(move |z| z.sinh() - I * z.cosh() * (z * a).sinh()),
        ],
        (S::BendingSpacelike { a }, Chart::Punctured) => [
            sfn(move |w| {
                let p = w.powf(a);
                -I * (p * p + 1.0) / (2.0 * p * w)
            }),
            sfn(move |w| {
                let (p, w2) = (w.powf(a), w * w);
                let p2 = p * p;
                (-I * p2 * w2 + I * p2 + 2.0 * p * w2 + 2.0 * p + I * w2 - I) / (4.0 * p * w2)
            }),
            sfn(move |w| {
                let (p, w2) = (w.powf(a), w * w);
                let p2 = p * p;
                (-I * p2 * w2 - I * p2 + 2.0 * p * w2 - 2.0 * p + I * w2 + I) / (4.0 * p * w2)
            }),
        ],
        (S::LightlikeRotational { a }, Chart::Exp) => {
            let (ch, sh) = (a.cosh(), a.sinh());
            [
                sfn(move |z| z + 0.5 * I * ((z * z - 2.0) * ch - z * z * sh)),
                sfn(move |z| 1.0 + I * z * (ch - sh)),
                sfn(move |z| z + 0.5 * I * (z * z * ch - (z * z + 2.0) * sh)),
            ]
        }
        (S::HelicoidalTimelike { a, lambda: l }, Chart::Exp) => {
            let m = (1.0 - l * l).sqrt();
            [
                sfn(move |z| I * m * z.cos() * (z * a).cosh() - z.sin() * (1.0 + I * l * (z * a).sinh())),
                sfn(move |z| z.cos() * (1.0 + I * l * (z * a).sinh()) + I * m * z.sin() * (z * a).cosh()),
                sfn(move |z| l + I * (z * a).sinh()),
            ]
        }
        (S::HelicoidalSpacelikeI { a, lambda: l }, Chart::Exp) => {
            let m = (l * l - 1.0).sqrt();
            [
                sfn(move |z| l + I * (z * a).sinh()),
                sfn(move |z| {
                    let (sa, ca) = ((z * a).sinh(), (z * a).cosh());
                    z.sinh() + I * (l * z.sinh() * sa - m * z.cosh() * ca)
                }),
                sfn(move |z| {
                    let (sa, ca) = ((z * a).sinh(), (z * a).cosh());
                    z.cosh() + I * (l * z.cosh() * sa - m * z.sinh() * ca)
                }),
            ]
        }
        (S::HelicoidalSpacelikeI { a, lambda: l }, Chart::Punctured) => {
            let m = (l * l - 1.0).sqrt();
            [
                sfn(move |w| {
                    let p = w.powf(a);
                    (I * p * p + 2.0 * l * p - I) / (2.0 * p * w)
                }),
                sfn(move |w| {
                    let (p, w2) = (w.powf(a), w * w);
                    let p2 = p * p;
                    (I * (l - m) * (p2 * w2 + 1.0) - I * (l + m) * (p2 + w2) + 2.0 * p * w2 - 2.0 * p) / (4.0 * p * w2)
                }),
                sfn(move |w| {
                    let (p, w2) = (w.powf(a), w * w);
                    let p2 = p * p;
                    (I * (l - m) * (p2 * w2 - 1.0) + I * (l + m) * (p2 - w2) + 2.0 * p * w2 + 2.0 * p) / (4.0 * p * w2)
                }),
            ]
        }
        (S::HelicoidalSpacelikeII { a, lambda: l }, Chart::Exp) => {
            let m = (l * l + 1.0).sqrt();
            [
                sfn(move |z| l - I * (z * a).cosh()),
                sfn(move |z| {
                    let (sa, ca) = ((z * a).sinh(), (z * a).cosh());
                    z.cosh() + I * (l * z.cosh() * ca - m * z.sinh() * sa)
                }),
                sfn(move |z| {
                    let (sa, ca) = ((z * a).sinh(), (z * a).cosh());
                    z.sinh() + I * (l * z.sinh() * ca - m * z.cosh() * sa)
                }),
            ]
        }
        (S::HelicoidalSpacelikeII { a, lambda: l }, Chart::Punctured) => {
            let m = (l * l + 1.0).sqrt();
            [
                sfn(move |w| {
                    let p = w.powf(a);
                    (-I * p * p + 2.0 * l * p - I) / (2.0 * p * w)
                }),
                sfn(move |w| {
                    let (p, w2) = (w.powf(a), w * w);
                    let p2 = p * p;
                    (I * (l - m) * (p2 * w2 + 1.0) + I * (l + m) * (p2 + w2) + 2.0 * p * w2 + 2.0 * p) / (4.0 * p * w2)
                }),
                sfn(move |w| {
                    let (p, w2) = (w.powf(a), w * w);
                    let p2 = p * p;
                    (I * (l - m) * (p2 * w2 - 1.0) - I * (l + m) * (p2 - w2) + 2.0 * p * w2 - 2.0 * p) / (4.0 * p * w2)
                }),
            ]
        }
        (
            S::BendingTimelike { .. } | S::LightlikeRotational { .. } | S::HelicoidalTimelike { .. },
            Chart::Punctured,
        ) => return Err(unavailable()),
        (
            S::EllipticCatenoid { .. }
            | S::HyperbolicCatenoid { .. }
            | S::HelicoidTimelikeConst { .. }
            | S::EnneperSecondKind { .. },
            _,
        ) => return Err(WeierstrassError::Unsupported(s.name())),
    };
    Ok(FormTriple::new(phi, chart, Flavor::Maximal))
}

/// `(g, ω = f dz)` with `g = φ3 / (φ1 − iφ2)` and `f = φ1 − iφ2`.
#[derive(Clone)]
pub struct WeierstrassData {
    pub g: ScalarFn,
    pub f: ScalarFn,
    pub chart: Chart,
    pub flavor: Flavor,
    pub singularities: Vec<C>,
}

impl fmt::Debug for WeierstrassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeierstrassData")
            .field("chart", &self.chart)
            .field("flavor", &self.flavor)
            .field("singularities", &self.singularities)
            .finish_non_exhaustive()
    }
}

impl WeierstrassData {
    pub fn new(g: ScalarFn, f: ScalarFn, chart: Chart, flavor: Flavor) -> Self {
        Self { g, f, chart, flavor, singularities: Vec::new() }
    }

    /// The three forms recovered from `(g, f)`:
    /// maximal `(½(1+g²)f, (i/2)(1−g²)f, g f)`, minimal `(½(1−g²)f, (i/2)(1+g²)f, g f)`.
    pub fn reconstruct(&self, z: C) -> [C; 3] {
        let (g, f) = ((self.g)(z), (self.f)(z));
        let g2 = g * g;
        match self.flavor {
            Flavor::Maximal => [0.5 * (1.0 + g2) * f, 0.5 * I * (1.0 - g2) * f, g * f],
            Flavor::Minimal => [0.5 * (1.0 - g2) * f, 0.5 * I * (1.0 + g2) * f, g * f],
        }
    }

    pub fn to_forms(&self) -> FormTriple {
        let make = |k: usize| {
            let w = self.clone();
            sfn(move |z| w.reconstruct(z)[k])
        };
        let mut t = FormTriple::new([make(0), make(1), make(2)], self.chart, self.flavor);
        t.singularities = self.singularities.clone();
        t
    }
}

const DEGENERACY_PROBES: [C; 5] =
    [C::new(0.37, 0.21), C::new(-0.53, 0.44), C::new(0.81, -0.66), C::new(-0.29, -0.92), C::new(1.3, 0.7)];

pub fn weierstrass_pair(t: &FormTriple) -> Result<WeierstrassData, WeierstrassError> {
    let f_of = {
        let t = t.clone();
        move |z: C| (t.phi[0])(z) - I * (t.phi[1])(z)
    };
    let scale: f64 = DEGENERACY_PROBES.iter().map(|&z| t.eval(z).iter().map(|c| c.norm()).sum::<f64>()).sum();
    let size: f64 = DEGENERACY_PROBES.iter().map(|&z| f_of(z).norm()).sum();
    if !(size > 1e-13 * scale.max(1e-300)) {
        return Err(WeierstrassError::DegenerateTriple);
    }
    let g = {
        let t = t.clone();
        let f_of = f_of.clone();
        sfn(move |z| (t.phi[2])(z) / f_of(z))
    };
    let mut w = WeierstrassData::new(g, sfn(f_of), t.chart, t.flavor);
    w.singularities = t.singularities.clone();
    Ok(w)
}

/// `|g|` within this distance of 1 is reported as a degenerate Gauss map.
pub const GAUSS_MAP_TOL: f64 = 1e-9;

/// Unit normal from `g`: stereographic projection onto the hyperboloid
/// `N = (2 Re g, 2 Im g, 1 + |g|²) / (1 − |g|²)` for maximal data, onto the
/// sphere `(2 Re g, 2 Im g, |g|² − 1) / (|g|² + 1)` for minimal data.
pub fn gauss_map(w: &WeierstrassData, z: C) -> Result<Vec3R, WeierstrassError> {
    let g = (w.g)(z);
    let m = g.norm_sqr();
    match w.flavor {
        Flavor::Maximal => {
            let d = 1.0 - m;
            if d.abs() <= GAUSS_MAP_TOL || !d.is_finite() {
                return Err(WeierstrassError::DegenerateGaussMap { z });
            }
            Ok(Vec3::new(2.0 * g.re / d, 2.0 * g.im / d, (1.0 + m) / d))
        }
        Flavor::Minimal => {
            let d = 1.0 + m;
            Ok(Vec3::new(2.0 * g.re / d, 2.0 * g.im / d, (m - 1.0) / d))
        }
    }
}

/// Counterclockwise circle in the chart variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Loop {
    pub center: C,
    pub radius: f64,
}

impl Loop {
    pub fn new(center: C, radius: f64) -> Result<Self, WeierstrassError> {
        if !(radius > 0.0 && radius.is_finite() && center.re.is_finite() && center.im.is_finite()) {
            return Err(WeierstrassError::InvalidLoop(format!("radius must be > 0, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self { center: C::new(0.0, 0.0), radius: 1.0 }
    }
}

pub const PERIOD_TOL: f64 = 1e-13;
pub const PERIOD_MAX_NODES: usize = 1 << 16;

/// `∮ φ_k dz` over `lp`, trapezoidal rule starting at `nodes` points and
/// doubling until two successive values agree to `PERIOD_TOL · max(1, |I|)`.
pub fn period(t: &FormTriple, k: usize, lp: &Loop, nodes: usize) -> Result<C, WeierstrassError> {
    let f = t.component(k)?.clone();
    if t.chart != Chart::Punctured {
        return Err(WeierstrassError::InvalidLoop("periods are taken in the punctured chart".into()));
    }
    for s in &t.singularities {
        if ((s - lp.center).norm() - lp.radius).abs() < 1e-9 * lp.radius {
            return Err(WeierstrassError::InvalidLoop(format!("singularity {s} lies on the loop")));
        }
    }
    let mut n = nodes.max(8);
    let mut prev = trapezoid_circle(lp.center, lp.radius, n, |z| f(z));
    loop {
        let next_n = 2 * n;
        let next = trapezoid_circle(lp.center, lp.radius, next_n, |z| f(z));
        let change = (next - prev).norm();
        if change <= PERIOD_TOL * next.norm().max(1.0) {
            return Ok(next);
        }
        if next_n >= PERIOD_MAX_NODES || !change.is_finite() {
            return Err(WeierstrassError::PeriodNonConvergence { k, nodes: next_n, change });
        }
        prev = next;
        n = next_n;
    }
}

/// `(ψ1, ψ2, ψ3) = (iφ1, iφ2, φ3)`: forms of the dual minimal surface.
pub fn dualize(t: &FormTriple) -> FormTriple {
    scale_forms(t, [I, I, C::new(1.0, 0.0)], Flavor::Minimal)
}

/// `(φ1, φ2, φ3) = (−iψ1, −iψ2, ψ3)`.
pub fn undualize(t: &FormTriple) -> FormTriple {
    scale_forms(t, [-I, -I, C::new(1.0, 0.0)], Flavor::Maximal)
}

fn scale_forms(t: &FormTriple, k: [C; 3], flavor: Flavor) -> FormTriple {
    let make = |j: usize| {
        let f = t.phi[j].clone();
        let c = k[j];
        sfn(move |z| c * f(z))
    };
    let mut out = FormTriple::new([make(0), make(1), make(2)], t.chart, flavor);
    out.singularities = t.singularities.clone();
    out
}

/// Weierstrass data of the dual surface directly from `(g, ω)`: `(−ig, iω)`.
pub fn dual_pair(w: &WeierstrassData) -> WeierstrassData {
    let (g, f) = (w.g.clone(), w.f.clone());
    let flavor = match w.flavor {
        Flavor::Maximal => Flavor::Minimal,
        Flavor::Minimal => Flavor::Maximal,
    };
    let (kg, kf) = match w.flavor {
        Flavor::Maximal => (-I, I),
        Flavor::Minimal => (I, -I),
    };
    let mut out = WeierstrassData::new(sfn(move |z| kg * g(z)), sfn(move |z| kf * f(z)), w.chart, flavor);
    out.singularities = w.singularities.clone();
    out
}

/// Derivative of a holomorphic function by the 8-point circular stencil
/// `f′(z) ≈ Σ f(z + h ω^k) ω^{−k} / (8h)`, exact through degree 8.
pub fn complex_derivative(f: &ScalarFn, z: C, h: f64) -> C {
    let mut acc = C::new(0.0, 0.0);
    for k in 0..8 {
        let e = C::from_polar(1.0, PI * k as f64 / 4.0);
        acc += f(z + e * h) * e.conj();
    }
    acc / (8.0 * h)
}

fn derivative_step(z: C) -> f64 {
    1e-3 * z.norm().max(1.0)
}

/// `|g′| / (1 + |g|²)`, evaluated through `1/g` where `|g| > 1` so poles of
/// `g` are harmless.
pub fn spherical_derivative(g: &ScalarFn, z: C) -> f64 {
    let gz = g(z);
    let h = derivative_step(z);
    if gz.norm() <= 1.0 {
        complex_derivative(g, z, h).norm() / (1.0 + gz.norm_sqr())
    } else {
        let inv: ScalarFn = {
            let g = g.clone();
            sfn(move |w| 1.0 / g(w))
        };
        let q = 1.0 / gz;
        complex_derivative(&inv, z, h).norm() / (1.0 + q.norm_sqr())
    }
}

/// Radius below which a disk (`r_in = 0`) is integrated on a uniform radial
/// grid; beyond it the radial grid is logarithmic.
const DISK_CORE: f64 = 1e-3;

/// `−4 ∬ |g′|² / (1 + |g|²)² dA` over `r_in ≤ |z| ≤ r_out`.
///
/// Radial midpoint rule in `log r` (with a uniform core when `r_in = 0`),
/// periodic trapezoid in `θ`. Rings are evaluated in parallel and summed in
/// a fixed order.
pub fn total_curvature(
    w: &WeierstrassData,
    annulus: (f64, f64),
    grid: (usize, usize),
) -> Result<f64, WeierstrassError> {
    let (r_in, r_out) = annulus;
    let (nr, nt) = grid;
    if !(r_in >= 0.0 && r_out > r_in && r_out.is_finite() && nr >= 2 && nt >= 4) {
        return Err(WeierstrassError::InvalidAnnulus { r_in, r_out, nr, ntheta: nt });
    }
    // (radius, weight dr) pairs
    let mut rings: Vec<(f64, f64)> = Vec::with_capacity(nr + nr / 8 + 1);
    let log_lo = if r_in > 0.0 {
        r_in
    } else {
        let core = DISK_CORE.min(0.5 * r_out);
        let nc = (nr / 8).max(4);
        let dr = core / nc as f64;
        rings.extend((0..nc).map(|i| ((i as f64 + 0.5) * dr, dr)));
        core
    };
    let (s0, s1) = (log_lo.ln(), r_out.ln());
    let ds = (s1 - s0) / nr as f64;
    rings.extend((0..nr).map(|i| {
        let r = (s0 + (i as f64 + 0.5) * ds).exp();
        (r, r * ds)
    }));
    let dtheta = 2.0 * PI / nt as f64;
    let g = &w.g;
    let per_ring: Vec<f64> = rings
        .par_iter()
        .map(|&(r, dr)| {
            let s: f64 = (0..nt)
                .map(|k| {
                    let z = C::from_polar(r, dtheta * k as f64);
                    let sd = spherical_derivative(g, z);
                    sd * sd
                })
                .sum();
            s * dtheta * r * dr
        })
        .collect();
    let mut total = 0.0;
    for (&v, &(r, _)) in per_ring.iter().zip(&rings) {
        if !v.is_finite() {
            return Err(WeierstrassError::CurvatureNonFinite { r });
        }
        total += v;
    }
    Ok(-4.0 * total)
}
