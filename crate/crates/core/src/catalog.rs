//! Closed-form parametrizations of the maximal surfaces built over circles and
//! helices, in the conformal Björling parameters `(u, v)` with `u0 = 0`.
//!
//! Families whose formula carries an `a² − 1` denominator have a separate
//! `a = 1` form. Near `a = 1` the generic form cancels catastrophically, so
//! `eval_surface` switches between three evaluations:
//!
//! * `|a − 1| < 1e-6`: the `a = 1` form;
//! * `1e-6 ≤ |a − 1| < 1e-3`: the generic form with the `(a² − 1)` division
//!   carried out analytically (see [`CompensatedTerms`]);
//! * otherwise the generic form as written.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::sinc;
use crate::frames::{CurveFamily, FrameError, NormalFieldSpec};
use crate::lorentz::{Vec3, Vec3R};
use crate::motion::MotionGroup;
use crate::surface::{Domain, SurfacePatch};

pub const UNIT_BRANCH_TOL: f64 = 1e-6;
pub const COMPENSATED_BRANCH_TOL: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("{family}: parameter a = {a} must be > 0")]
    NonPositiveRate { family: &'static str, a: f64 },
    #[error("{family}: generating-curve coefficient λ = {lambda} must be > 0")]
    NonPositiveCubic { family: &'static str, lambda: f64 },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("non-finite parameter in {0}")]
    NonFinite(&'static str),
}

/// Every explicit surface of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id")]
pub enum CatalogSurface {
    /// Circle with timelike axis, φ = a·t.
    BendingTimelike { a: f64 },
    /// Circle with spacelike axis, φ = a·t.
    BendingSpacelike { a: f64 },
    /// Circle with lightlike axis, φ ≡ a.
    LightlikeRotational { a: f64 },
    /// Helix with timelike axis, φ = a·t, 0 < λ < 1.
    HelicoidalTimelike { a: f64, lambda: f64 },
    /// Helix of type I with spacelike axis, φ = a·t, λ > 1.
    HelicoidalSpacelikeI { a: f64, lambda: f64 },
    /// Helix of type II with spacelike axis, φ = a·t, λ > 0.
    HelicoidalSpacelikeII { a: f64, lambda: f64 },
    /// Circle with timelike axis, φ ≡ a.
    EllipticCatenoid { a: f64 },
    /// Circle with spacelike axis, φ ≡ a.
    HyperbolicCatenoid { a: f64 },
    /// Helix with timelike axis, φ ≡ a.
    HelicoidTimelikeConst { a: f64, lambda: f64 },
    /// Orbit `Ψ_l(u) · β(v)` of the cubic generating curve.
    EnneperSecondKind { lambda: f64, mu: f64 },
}

impl CatalogSurface {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogSurface::BendingTimelike { .. } => "BendingTimelike",
            CatalogSurface::BendingSpacelike { .. } => "BendingSpacelike",
            CatalogSurface::LightlikeRotational { .. } => "LightlikeRotational",
            CatalogSurface::HelicoidalTimelike { .. } => "HelicoidalTimelike",
            CatalogSurface::HelicoidalSpacelikeI { .. } => "HelicoidalSpacelikeI",
            CatalogSurface::HelicoidalSpacelikeII { .. } => "HelicoidalSpacelikeII",
            CatalogSurface::EllipticCatenoid { .. } => "EllipticCatenoid",
            CatalogSurface::HyperbolicCatenoid { .. } => "HyperbolicCatenoid",
            CatalogSurface::HelicoidTimelikeConst { .. } => "HelicoidTimelikeConst",
            CatalogSurface::EnneperSecondKind { .. } => "EnneperSecondKind",
        }
    }

    /// Enneper surface of the second kind whose orbit passes through the
    /// lightlike-axis circle at `v = −1/2`.
    pub fn enneper_for_lightlike(a: f64) -> Self {
        let g = GeneratingCurve::for_lightlike(a);
        CatalogSurface::EnneperSecondKind { lambda: g.lambda, mu: g.mu }
    }

    pub fn rate(&self) -> Option<f64> {
        match *self {
            CatalogSurface::BendingTimelike { a }
            | CatalogSurface::BendingSpacelike { a }
            | CatalogSurface::LightlikeRotational { a }
            | CatalogSurface::HelicoidalTimelike { a, .. }
            | CatalogSurface::HelicoidalSpacelikeI { a, .. }
            | CatalogSurface::HelicoidalSpacelikeII { a, .. }
            | CatalogSurface::EllipticCatenoid { a }
            | CatalogSurface::HyperbolicCatenoid { a }
            | CatalogSurface::HelicoidTimelikeConst { a, .. } => Some(a),
            CatalogSurface::EnneperSecondKind { .. } => None,
        }
    }

    /// Björling data (core-curve family and normal-field law) generating this
    /// surface; `None` for the generating-curve orbit.
    pub fn bjorling_source(&self) -> Option<(CurveFamily, NormalFieldSpec)> {
        use CatalogSurface as S;
        use CurveFamily as F;
        use NormalFieldSpec::{Constant, Linear};
        Some(match *self {
            S::BendingTimelike { a } => (F::CircleTimelike, Linear(a)),
            S::BendingSpacelike { a } => (F::CircleSpacelike, Linear(a)),
            S::LightlikeRotational { a } => (F::CircleLightlike, Constant(a)),
            S::HelicoidalTimelike { a, lambda } => (F::HelixTimelike { lambda }, Linear(a)),
            S::HelicoidalSpacelikeI { a, lambda } => (F::HelixSpacelikeI { lambda }, Linear(a)),
            S::HelicoidalSpacelikeII { a, lambda } => (F::HelixSpacelikeII { lambda }, Linear(a)),
            S::EllipticCatenoid { a } => (F::CircleTimelike, Constant(a)),
            S::HyperbolicCatenoid { a } => (F::CircleSpacelike, Constant(a)),
            S::HelicoidTimelikeConst { a, lambda } => (F::HelixTimelike { lambda }, Constant(a)),
            S::EnneperSecondKind { .. } => return None,
        })
    }

    /// Catalog surface solving the Björling problem for `(family, spec)`, if any.
    pub fn from_bjorling(family: CurveFamily, spec: NormalFieldSpec) -> Option<Self> {
        use CatalogSurface as S;
        use CurveFamily as F;
        use NormalFieldSpec::{Constant, Linear};
        Some(match (family, spec) {
            (F::CircleTimelike, Linear(a)) => S::BendingTimelike { a },
            (F::CircleSpacelike, Linear(a)) => S::BendingSpacelike { a },
            (F::CircleLightlike, Constant(a)) => S::LightlikeRotational { a },
            (F::HelixTimelike { lambda }, Linear(a)) => S::HelicoidalTimelike { a, lambda },
            (F::HelixSpacelikeI { lambda }, Linear(a)) => S::HelicoidalSpacelikeI { a, lambda },
            (F::HelixSpacelikeII { lambda }, Linear(a)) => S::HelicoidalSpacelikeII { a, lambda },
            (F::CircleTimelike, Constant(a)) => S::EllipticCatenoid { a },
            (F::CircleSpacelike, Constant(a)) => S::HyperbolicCatenoid { a },
            (F::HelixTimelike { lambda }, Constant(a)) => S::HelicoidTimelikeConst { a, lambda },
            _ => return None,
        })
    }

    /// The symmetry group under which `X(u + θ, v) = Ψ(θ) · X(u, v)`, for the
    /// constant-φ families.
    pub fn symmetry(&self) -> Option<MotionGroup> {
        match *self {
            CatalogSurface::EllipticCatenoid { .. } => Some(MotionGroup::RotTimelike),
            CatalogSurface::HyperbolicCatenoid { .. } => Some(MotionGroup::RotSpacelike),
            CatalogSurface::LightlikeRotational { .. } | CatalogSurface::EnneperSecondKind { .. } => {
                Some(MotionGroup::RotLightlike)
            }
            CatalogSurface::HelicoidTimelikeConst { lambda, .. } => Some(MotionGroup::ScrewTimelike { lambda }),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let name = self.name();
        if let CatalogSurface::EnneperSecondKind { lambda, mu } = *self {
            if !(lambda.is_finite() && mu.is_finite()) {
                return Err(CatalogError::NonFinite(name));
            }
            if lambda <= 0.0 {
                return Err(CatalogError::NonPositiveCubic { family: name, lambda });
            }
            return Ok(());
        }
        let (family, spec) = self.bjorling_source().expect("Björling family");
        family.validate()?;
        let a = spec.rate();
        if !a.is_finite() {
            return Err(CatalogError::NonFinite(name));
        }
        if matches!(spec, NormalFieldSpec::Linear(_)) && a <= 0.0 {
            return Err(CatalogError::NonPositiveRate { family: name, a });
        }
        Ok(())
    }

    pub fn patch(&self, domain: Domain) -> Result<SurfacePatch, CatalogError> {
        self.validate()?;
        let s = *self;
        Ok(SurfacePatch::from_fn(format!("catalog:{s:?}"), domain, move |u, v| eval_surface(&s, u, v)))
    }
}

/// Value of the closed form at `(u, v)`.
pub fn eval_surface(s: &CatalogSurface, u: f64, v: f64) -> Vec3R {
    use CatalogSurface as S;
    match *s {
        S::BendingTimelike { a } => bending_timelike(a, u, v),
        S::BendingSpacelike { a } => {
            let d = (a - 1.0).abs();
            if d < UNIT_BRANCH_TOL {
                bending_spacelike_unit(u, v)
            } else if d < COMPENSATED_BRANCH_TOL {
                bending_spacelike_compensated(a, u, v)
            } else {
                bending_spacelike_generic(a, u, v)
            }
        }
        S::LightlikeRotational { a } => lightlike_rotational(a, u, v),
        S::HelicoidalTimelike { a, lambda } => helicoidal_timelike(a, lambda, u, v),
        S::HelicoidalSpacelikeI { a, lambda } => {
            let d = (a - 1.0).abs();
            if d < UNIT_BRANCH_TOL {
                helicoidal_spacelike_i_unit(lambda, u, v)
            } else if d < COMPENSATED_BRANCH_TOL {
                helicoidal_spacelike_i_compensated(a, lambda, u, v)
            } else {
                helicoidal_spacelike_i_generic(a, lambda, u, v)
            }
        }
        S::HelicoidalSpacelikeII { a, lambda } => {
            let d = (a - 1.0).abs();
            if d < UNIT_BRANCH_TOL {
                helicoidal_spacelike_ii_unit(lambda, u, v)
            } else if d < COMPENSATED_BRANCH_TOL {
                helicoidal_spacelike_ii_compensated(a, lambda, u, v)
            } else {
                helicoidal_spacelike_ii_generic(a, lambda, u, v)
            }
        }
        S::EllipticCatenoid { a } => elliptic_catenoid(a, u, v),
        S::HyperbolicCatenoid { a } => hyperbolic_catenoid(a, u, v),
        S::HelicoidTimelikeConst { a, lambda } => helicoid_timelike_const(a, lambda, u, v),
        S::EnneperSecondKind { lambda, mu } => GeneratingCurve { lambda, mu }.orbit(u, v),
    }
}

// ---------------------------------------------------------------------------
// Circle, timelike axis

/// Eq. (ct): bending helicoid over `(cos t, sin t, 0)`.
pub fn bending_timelike(a: f64, u: f64, v: f64) -> Vec3R {
    let d = a * a + 1.0;
    let (su, cu) = u.sin_cos();
    let (sav, cav) = (a * v).sin_cos();
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    let (shv, chv) = (v.sinh(), v.cosh());
    let x = (a * cu * sav * chau * chv - a * su * cav * shau * shv + cu * cav * chau * shv + su * sav * shau * chv) / d
        + cu * chv;
    let y = (a * cu * cav * shau * shv + a * su * sav * chau * chv + su * cav * chau * shv - cu * sav * shau * chv) / d
        + su * chv;
    let z = -sav * shau / a;
    Vec3::new(x, y, z)
}

/// Rotational surface for φ ≡ a. The sign of the third component is the one
/// produced by the Björling integral (`−v sinh a`).
pub fn elliptic_catenoid(a: f64, u: f64, v: f64) -> Vec3R {
    let r = a.cosh() * v.sinh() + v.cosh();
    Vec3::new(u.cos() * r, u.sin() * r, -v * a.sinh())
}

// ---------------------------------------------------------------------------
// Circle, spacelike axis

pub fn hyperbolic_catenoid(a: f64, u: f64, v: f64) -> Vec3R {
    let (sv, cv) = v.sin_cos();
    let sha = a.sinh();
    Vec3::new(v * a.cosh(), sha * u.sinh() * sv + u.sinh() * cv, sha * u.cosh() * sv + u.cosh() * cv)
}

/// Eq. (cs1), `a ≠ 1`.
pub fn bending_spacelike_generic(a: f64, u: f64, v: f64) -> Vec3R {
    let d = a * a - 1.0;
    let (sv, cv) = v.sin_cos();
    let (sav, cav) = (a * v).sin_cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    let x = chau * sav / a;
    let y = (-sv * cav * shu * shau + a * sav * cv * shu * shau + a * sv * cav * chu * chau - cv * sav * chu * chau)
        / d
        + shu * cv;
    let z = (a * cv * sav * chu * shau - sv * cav * chu * shau + a * sv * cav * shu * chau - cv * sav * shu * chau) / d
        + cv * chu;
    Vec3::new(x, y, z)
}

/// Eq. (cs2), `a = 1`.
pub fn bending_spacelike_unit(u: f64, v: f64) -> Vec3R {
    let (sv, cv) = v.sin_cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    Vec3::new(chu * sv, shu * cv + 0.5 * sv * cv * (shu * shu + chu * chu) - 0.5 * v, chu * cv * (1.0 + shu * sv))
}

/// Eq. (cs1) with the two `(a² − 1)`-fractions grouped and divided out.
pub fn bending_spacelike_compensated(a: f64, u: f64, v: f64) -> Vec3R {
    let t = CompensatedTerms::new(a, v);
    let (sv, cv) = v.sin_cos();
    let (sav, cav) = (a * v).sin_cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    // (a sin av cos v − sin v cos av) / (a² − 1)
    let p1 = (sav * cv + t.ratio) / (a + 1.0);
    // (a sin v cos av − cos v sin av) / (a² − 1)
    let p2 = (sv * cav - t.ratio) / (a + 1.0);
    Vec3::new(
        chau * sav / a,
        shu * shau * p1 + chu * chau * p2 + shu * cv,
        chu * shau * p1 + shu * chau * p2 + cv * chu,
    )
}

/// `sin((a − 1) v) / (a − 1)`, evaluated without cancellation.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedTerms {
    pub ratio: f64,
}

impl CompensatedTerms {
    pub fn new(a: f64, v: f64) -> Self {
        Self { ratio: v * sinc((a - 1.0) * v) }
    }
}

// ---------------------------------------------------------------------------
// Circle, lightlike axis

/// Eq. (lig2).
pub fn lightlike_rotational(a: f64, u: f64, v: f64) -> Vec3R {
    let s = a.sinh() - a.cosh();
    let cubic = 0.5 * u * u * v - v * v * v / 6.0;
    let quad = 0.5 * u * u - 0.5 * v * v;
    Vec3::new(s * cubic + v * a.cosh() + quad - 1.0, u + s * u * v, s * cubic + v * a.sinh() + quad)
}

/// `β(v) = (h(v) + v, 0, h(v) − v)` with `h(v) = λ v³ + μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratingCurve {
    pub lambda: f64,
    pub mu: f64,
}

impl GeneratingCurve {
    /// Constants for which the orbit contains the lightlike-axis circle at
    /// `v = −1/2`: `μ = −(cosh a − 2 sinh a)(sinh a + cosh a)/3`, `λ = 8μ + 4`.
    pub fn for_lightlike(a: f64) -> Self {
        let mu = -(a.cosh() - 2.0 * a.sinh()) * (a.sinh() + a.cosh()) / 3.0;
        Self { lambda: 8.0 * mu + 4.0, mu }
    }

    pub fn h(&self, v: f64) -> f64 {
        self.lambda * v * v * v + self.mu
    }

    pub fn eval(&self, v: f64) -> Vec3R {
        let h = self.h(v);
        Vec3::new(h + v, 0.0, h - v)
    }

    /// `Z(u, v) = Ψ_l(u) · β(v)`.
    pub fn orbit(&self, u: f64, v: f64) -> Vec3R {
        MotionGroup::RotLightlike.apply(u, self.eval(v))
    }
}

pub fn eval_generating_curve(g: &GeneratingCurve, v: f64) -> Vec3R {
    g.eval(v)
}

/// Residual of the first integral `c (s − f)³ + (s − f) = 2 s + b` of the
/// rotational `H = 0` equation along `β(v) = (s, 0, f)`.
///
/// `s − f = 2v` is formed exactly; subtracting the rounded components would
/// cost `ε |h|` before cubing.
pub fn ode_residual(g: &GeneratingCurve, c: f64, b: f64, v: f64) -> f64 {
    let s = g.h(v) + v;
    let d = 2.0 * v;
    (c * d * d * d + d - 2.0 * s - b).abs()
}

/// `‖Ψ_l(u) · β(−1/2) − α(u)‖` for the lightlike-axis circle and the
/// generating curve attached to `a`.
pub fn lightlike_identification_check(a: f64, u: f64) -> f64 {
    let g = GeneratingCurve::for_lightlike(a);
    (g.orbit(u, -0.5) - CurveFamily::CircleLightlike.curve(u)).norm_euclid()
}

// ---------------------------------------------------------------------------
// Helix, timelike axis

/// Helicoidal surface for φ ≡ a.
pub fn helicoid_timelike_const(a: f64, lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (1.0 - lambda * lambda).sqrt();
    let (su, cu) = u.sin_cos();
    let (shv, chv) = (v.sinh(), v.cosh());
    let (sha, cha) = (a.sinh(), a.cosh());
    Vec3::new(
        -mu * cha * cu * shv + lambda * sha * su * shv + cu * chv,
        chv * su - mu * cha * su * shv - lambda * sha * cu * shv,
        lambda * u - v * sha,
    )
}

/// Eq. (ht).
pub fn helicoidal_timelike(a: f64, lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (1.0 - lambda * lambda).sqrt();
    let d = a * a + 1.0;
    let (su, cu) = u.sin_cos();
    let (sav, cav) = (a * v).sin_cos();
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    let (shv, chv) = (v.sinh(), v.cosh());
    let p = a * mu + lambda;
    let q = mu - a * lambda;
    let x = chv * (d * cu - q * su * shau * sav - p * cu * chau * sav) / d
        + shv * cav * (p * su * shau - q * cu * chau) / d;
    let y = chv * (d * su - p * su * chau * sav + q * cu * shau * sav) / d
        - shv * cav * (p * cu * shau + q * su * chau) / d;
    let z = lambda * u - shau * sav / a;
    Vec3::new(x, y, z)
}

// ---------------------------------------------------------------------------
// Helix, spacelike axis

/// The brackets shared by the type I and type II helix surfaces:
/// `P = (aμ + λ) cos v sin av − (aλ + μ) sin v cos av` and
/// `Q = (aμ + λ) sin v cos av − (aλ + μ) cos v sin av`.
fn helix_brackets(a: f64, lambda: f64, mu: f64, v: f64) -> (f64, f64) {
    let (sv, cv) = v.sin_cos();
    let (sav, cav) = (a * v).sin_cos();
    let p = (a * mu + lambda) * cv * sav - (a * lambda + mu) * sv * cav;
    let q = (a * mu + lambda) * sv * cav - (a * lambda + mu) * cv * sav;
    (p, q)
}

/// `P / (a² − 1)` and `Q / (a² − 1)` with the division done analytically.
fn helix_brackets_over_d(a: f64, lambda: f64, mu: f64, v: f64) -> (f64, f64) {
    let (sv, cv) = v.sin_cos();
    let (sav, cav) = (a * v).sin_cos();
    let r = CompensatedTerms::new(a, v).ratio;
    let s = mu + lambda;
    let p = (s * r + mu * cv * sav - lambda * sv * cav) / (a + 1.0);
    let q = (-s * r + mu * sv * cav - lambda * cv * sav) / (a + 1.0);
    (p, q)
}

fn type_i_from_brackets(a: f64, lambda: f64, u: f64, v: f64, p: f64, q: f64) -> Vec3R {
    let cv = v.cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    Vec3::new(
        lambda * u - shau * (a * v).sin() / a,
        chu * (cv + chau * p) + shu * shau * q,
        shu * (cv + chau * p) + chu * shau * q,
    )
}

fn type_ii_from_brackets(a: f64, lambda: f64, u: f64, v: f64, p: f64, q: f64) -> Vec3R {
    let cv = v.cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    Vec3::new(
        chau * (a * v).sin() / a + lambda * u,
        shu * (cv + shau * p) + chu * chau * q,
        chu * (cv + shau * p) + shu * chau * q,
    )
}

/// Eq. (hs11), `a ≠ 1`.
pub fn helicoidal_spacelike_i_generic(a: f64, lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (lambda * lambda - 1.0).sqrt();
    let d = a * a - 1.0;
    let (p, q) = helix_brackets(a, lambda, mu, v);
    let cv = v.cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    Vec3::new(
        lambda * u - shau * (a * v).sin() / a,
        chu * (d * cv + chau * p) / d + shu * shau * q / d,
        shu * (d * cv + chau * p) / d + chu * shau * q / d,
    )
}

pub fn helicoidal_spacelike_i_compensated(a: f64, lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (lambda * lambda - 1.0).sqrt();
    let (p, q) = helix_brackets_over_d(a, lambda, mu, v);
    type_i_from_brackets(a, lambda, u, v, p, q)
}

/// Eq. (hs12), `a = 1`.
pub fn helicoidal_spacelike_i_unit(lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (lambda * lambda - 1.0).sqrt();
    let (sv, cv) = v.sin_cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    Vec3::new(
        lambda * u - shu * sv,
        0.5 * ((mu - lambda) * (shu * shu + chu * chu) * sv * cv + 2.0 * chu * cv + (mu + lambda) * v),
        shu * cv * ((mu - lambda) * chu * sv + 1.0),
    )
}

/// Eq. (hs21), `a ≠ 1`.
pub fn helicoidal_spacelike_ii_generic(a: f64, lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (lambda * lambda + 1.0).sqrt();
    let d = a * a - 1.0;
    let (p, q) = helix_brackets(a, lambda, mu, v);
    let cv = v.cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    let (shau, chau) = ((a * u).sinh(), (a * u).cosh());
    Vec3::new(
        chau * (a * v).sin() / a + lambda * u,
        shu * (d * cv + shau * p) / d + chu * chau * q / d,
        chu * (d * cv + shau * p) / d + shu * chau * q / d,
    )
}

pub fn helicoidal_spacelike_ii_compensated(a: f64, lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (lambda * lambda + 1.0).sqrt();
    let (p, q) = helix_brackets_over_d(a, lambda, mu, v);
    type_ii_from_brackets(a, lambda, u, v, p, q)
}

/// Eq. (hs22), `a = 1`.
pub fn helicoidal_spacelike_ii_unit(lambda: f64, u: f64, v: f64) -> Vec3R {
    let mu = (lambda * lambda + 1.0).sqrt();
    let (sv, cv) = v.sin_cos();
    let (shu, chu) = (u.sinh(), u.cosh());
    Vec3::new(
        lambda * u + chu * sv,
        0.5 * ((mu - lambda) * (shu * shu + chu * chu) * sv * cv + 2.0 * shu * cv - (mu + lambda) * v),
        chu * cv * ((mu - lambda) * shu * sv + 1.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Vec3R, b: Vec3R, tol: f64) {
        assert!((a - b).max_abs() <= tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn closed_form_examples() {
        for &u in &[-1.0, 0.3, 2.0] {
            close(
                eval_surface(&CatalogSurface::BendingTimelike { a: 1.0 }, u, 0.0),
                Vec3::new(u.cos(), u.sin(), 0.0),
                1e-15,
            );
        }
        for &v in &[-0.7, 0.4, 1.3] {
            close(
                eval_surface(&CatalogSurface::BendingSpacelike { a: 1.0 }, 0.0, v),
                Vec3::new(v.sin(), 0.5 * v.sin() * v.cos() - 0.5 * v, v.cos()),
                1e-15,
            );
        }
        close(eval_surface(&CatalogSurface::LightlikeRotational { a: 0.0 }, 0.0, 0.0), Vec3::new(-1.0, 0.0, 0.0), 0.0);
    }

    #[test]
    fn generating_curve_examples() {
        let g = GeneratingCurve { lambda: 4.0, mu: 0.0 };
        assert_eq!(eval_generating_curve(&g, 0.0), Vec3R::zero());
        let g = GeneratingCurve::for_lightlike(0.0);
        assert!((g.mu + 1.0 / 3.0).abs() < 1e-15);
        assert!((g.lambda - 4.0 / 3.0).abs() < 1e-15);
        close(g.eval(1.0), Vec3::new(2.0, 0.0, 0.0), 1e-15);
    }

    #[test]
    fn ode_residual_vanishes_for_matching_constants() {
        let g = GeneratingCurve { lambda: 4.0 / 3.0, mu: -1.0 / 3.0 };
        let (c, b) = (g.lambda / 4.0, -2.0 * g.mu);
        assert!(ode_residual(&g, c, b, 0.7) <= 1e-12);
        assert!(ode_residual(&g, c, b, 0.0) <= 1e-15);
        assert!(ode_residual(&g, c + 0.1, b, 1.0) > 1e-3);
    }

    #[test]
    fn identification_examples() {
        assert!(lightlike_identification_check(0.0, 0.0) < 1e-15);
        assert!(lightlike_identification_check(1.0, 2.0) < 1e-10);
    }

    #[test]
    fn branches_switch_at_documented_thresholds() {
        let (u, v) = (0.4, -0.6);
        let s = |a| eval_surface(&CatalogSurface::BendingSpacelike { a }, u, v);
        assert_eq!(s(1.0 + 5e-7), bending_spacelike_unit(u, v));
        assert_eq!(s(1.0 + 5e-4), bending_spacelike_compensated(1.0 + 5e-4, u, v));
        assert_eq!(s(1.2), bending_spacelike_generic(1.2, u, v));
    }

    #[test]
    fn compensated_forms_agree_with_generic_away_from_one() {
        let (u, v) = (0.8, 0.9);
        for &a in &[0.5, 1.5, 2.0, 3.0] {
            close(bending_spacelike_compensated(a, u, v), bending_spacelike_generic(a, u, v), 1e-12);
            close(
                helicoidal_spacelike_i_compensated(a, 2.0, u, v),
                helicoidal_spacelike_i_generic(a, 2.0, u, v),
                1e-12,
            );
            close(
                helicoidal_spacelike_ii_compensated(a, 1.0, u, v),
                helicoidal_spacelike_ii_generic(a, 1.0, u, v),
                1e-12,
            );
        }
    }

    #[test]
    fn validation() {
        assert!(CatalogSurface::BendingTimelike { a: 0.0 }.validate().is_err());
        assert!(CatalogSurface::EllipticCatenoid { a: 0.0 }.validate().is_ok());
        assert!(CatalogSurface::HelicoidalTimelike { a: 1.0, lambda: 1.2 }.validate().is_err());
        assert!(CatalogSurface::EnneperSecondKind { lambda: -1.0, mu: 0.0 }.validate().is_err());
        assert!(CatalogSurface::HyperbolicCatenoid { a: f64::NAN }.validate().is_err());
    }
}
