//! Core curves (circles and helices, by causal type of the axis), their frames,
//! and the unit timelike normal fields used as Björling data.
//!
//! Frames are stored as closed forms per family rather than recomputed from
//! α″, so that orientation matches the published vectors exactly.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::{AnalyticMap, Scalar, SharedMap};
use crate::lorentz::{lorentz_dot, Vec3, Vec3C, Vec3R};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("pitch λ = {lambda} is outside the admissible range for {family}")]
    InvalidPitch { family: &'static str, lambda: f64 },
    #[error("a linearly varying φ on the lightlike-axis circle gives a non-integrable combination")]
    NonIntegrableLightlike,
    #[error("linear φ(t) = a·t requires a > 0 (got {0}); use a constant φ for a = 0")]
    NonPositiveRate(f64),
    #[error("non-finite parameter {0}")]
    NonFinite(f64),
}

/// Spacelike circles and helices, keyed by the causal character of the axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CurveFamily {
    CircleTimelike,
    CircleSpacelike,
    CircleLightlike,
    /// `0 < λ < 1`.
    HelixTimelike {
        lambda: f64,
    },
    /// `λ > 1`.
    HelixSpacelikeI {
        lambda: f64,
    },
    /// `λ > 0`.
    HelixSpacelikeII {
        lambda: f64,
    },
}

impl CurveFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::CircleTimelike => "CircleTimelike",
            CurveFamily::CircleSpacelike => "CircleSpacelike",
            CurveFamily::CircleLightlike => "CircleLightlike",
            CurveFamily::HelixTimelike { .. } => "HelixTimelike",
            CurveFamily::HelixSpacelikeI { .. } => "HelixSpacelikeI",
            CurveFamily::HelixSpacelikeII { .. } => "HelixSpacelikeII",
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match *self {
            CurveFamily::HelixTimelike { lambda }
            | CurveFamily::HelixSpacelikeI { lambda }
            | CurveFamily::HelixSpacelikeII { lambda } => Some(lambda),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), FrameError> {
        let Some(lambda) = self.lambda() else {
            return Ok(());
        };
        if !lambda.is_finite() {
            return Err(FrameError::NonFinite(lambda));
        }
        let ok = match self {
            CurveFamily::HelixTimelike { .. } => lambda > 0.0 && lambda < 1.0,
            CurveFamily::HelixSpacelikeI { .. } => lambda > 1.0,
            CurveFamily::HelixSpacelikeII { .. } => lambda > 0.0,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(FrameError::InvalidPitch { family: self.name(), lambda })
        }
    }

    /// The derived constant μ of a helix (0 for circles).
    pub fn mu(&self) -> f64 {
        match *self {
            CurveFamily::HelixTimelike { lambda } => (1.0 - lambda * lambda).sqrt(),
            CurveFamily::HelixSpacelikeI { lambda } => (lambda * lambda - 1.0).sqrt(),
            CurveFamily::HelixSpacelikeII { lambda } => (lambda * lambda + 1.0).sqrt(),
            _ => 0.0,
        }
    }

    /// True when the principal normal `n` is the timelike member of the frame,
    /// in which case `V = cosh φ · n + sinh φ · b`.
    pub fn normal_is_timelike(&self) -> bool {
        matches!(self, CurveFamily::CircleSpacelike | CurveFamily::HelixSpacelikeII { .. })
    }

    /// α(t).
    pub fn curve<T: Scalar>(&self, t: T) -> Vec3<T> {
        let l = T::lift(self.lambda().unwrap_or(0.0));
        match self {
            CurveFamily::CircleTimelike => Vec3::new(t.cos(), t.sin(), T::zero()),
            CurveFamily::CircleSpacelike => Vec3::new(T::zero(), t.sinh(), t.cosh()),
            CurveFamily::CircleLightlike => {
                let half_sq = t * t.scale(0.5);
                Vec3::new(half_sq - T::one(), t, half_sq)
            }
            CurveFamily::HelixTimelike { .. } => Vec3::new(t.cos(), t.sin(), l * t),
            CurveFamily::HelixSpacelikeI { .. } => Vec3::new(l * t, t.cosh(), t.sinh()),
            CurveFamily::HelixSpacelikeII { .. } => Vec3::new(l * t, t.sinh(), t.cosh()),
        }
    }

    /// α′(t).
    pub fn velocity<T: Scalar>(&self, t: T) -> Vec3<T> {
        let l = T::lift(self.lambda().unwrap_or(0.0));
        match self {
            CurveFamily::CircleTimelike => Vec3::new(-t.sin(), t.cos(), T::zero()),
            CurveFamily::CircleSpacelike => Vec3::new(T::zero(), t.cosh(), t.sinh()),
            CurveFamily::CircleLightlike => Vec3::new(t, T::one(), t),
            CurveFamily::HelixTimelike { .. } => Vec3::new(-t.sin(), t.cos(), l),
            CurveFamily::HelixSpacelikeI { .. } => Vec3::new(l, t.sinh(), t.cosh()),
            CurveFamily::HelixSpacelikeII { .. } => Vec3::new(l, t.cosh(), t.sinh()),
        }
    }

    /// Principal normal n(t). For the lightlike-axis circle this is the null
    /// vector α″/2.
    pub fn normal<T: Scalar>(&self, t: T) -> Vec3<T> {
        match self {
            CurveFamily::CircleTimelike | CurveFamily::HelixTimelike { .. } => Vec3::new(-t.cos(), -t.sin(), T::zero()),
            CurveFamily::CircleSpacelike | CurveFamily::HelixSpacelikeII { .. } => {
                Vec3::new(T::zero(), t.sinh(), t.cosh())
            }
            CurveFamily::HelixSpacelikeI { .. } => Vec3::new(T::zero(), t.cosh(), t.sinh()),
            CurveFamily::CircleLightlike => Vec3::new(T::lift(0.5), T::zero(), T::lift(0.5)),
        }
    }

    /// Binormal b(t). For the lightlike-axis circle, the null vector orthogonal
    /// to α′ with ⟨n, b⟩ = −1/2.
    pub fn binormal<T: Scalar>(&self, t: T) -> Vec3<T> {
        let l = self.lambda().unwrap_or(0.0);
        let inv_mu = if self.lambda().is_some() { 1.0 / self.mu() } else { 0.0 };
        let lt = T::lift(l);
        match self {
            CurveFamily::CircleTimelike => Vec3::new(T::zero(), T::zero(), T::one()),
            CurveFamily::CircleSpacelike => Vec3::new(T::one(), T::zero(), T::zero()),
            CurveFamily::CircleLightlike => {
                let sq = t * t;
                Vec3::new((sq - T::one()).scale(0.5), t, (sq + T::one()).scale(0.5))
            }
            CurveFamily::HelixTimelike { .. } => {
                Vec3::new(lt * t.sin(), -(lt * t.cos()), -T::one()).scale(T::lift(inv_mu))
            }
            CurveFamily::HelixSpacelikeI { .. } => {
                Vec3::new(T::one(), lt * t.sinh(), lt * t.cosh()).scale(T::lift(-inv_mu))
            }
            CurveFamily::HelixSpacelikeII { .. } => {
                Vec3::new(T::one(), -(lt * t.cosh()), -(lt * t.sinh())).scale(T::lift(inv_mu))
            }
        }
    }

    /// Unit timelike normal field V(t) for the prescribed φ.
    pub fn normal_field<T: Scalar>(&self, spec: NormalFieldSpec, t: T) -> Vec3<T> {
        let phi = spec.phi(t);
        let (sh, ch) = (phi.sinh(), phi.cosh());
        match self {
            CurveFamily::CircleLightlike => {
                let sq = t * t;
                // e2 = n − b, e3 = n + b
                let e2 = Vec3::new((T::lift(2.0) - sq).scale(0.5), -t, -(sq.scale(0.5)));
                let e3 = Vec3::new(sq.scale(0.5), t, (sq + T::lift(2.0)).scale(0.5));
                e2.scale(sh) + e3.scale(ch)
            }
            f if f.normal_is_timelike() => f.normal(t).scale(ch) + f.binormal(t).scale(sh),
            f => f.normal(t).scale(sh) + f.binormal(t).scale(ch),
        }
    }
}

/// φ(t) in `V = sinh φ · (spacelike frame vector) + cosh φ · (timelike one)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "phi", content = "a")]
pub enum NormalFieldSpec {
    /// φ(t) = a.
    Constant(f64),
    /// φ(t) = a·t, a > 0.
    Linear(f64),
}

impl NormalFieldSpec {
    pub fn rate(&self) -> f64 {
        match *self {
            NormalFieldSpec::Constant(a) | NormalFieldSpec::Linear(a) => a,
        }
    }

    pub fn phi<T: Scalar>(&self, t: T) -> T {
        match *self {
            NormalFieldSpec::Constant(a) => T::lift(a),
            NormalFieldSpec::Linear(a) => t.scale(a),
        }
    }
}

/// Evaluator of α on C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    pub family: CurveFamily,
}

impl Curve {
    pub fn at(&self, t: f64) -> Vec3R {
        self.family.curve(t)
    }

    pub fn velocity_at(&self, t: f64) -> Vec3R {
        self.family.velocity(t)
    }
}

impl AnalyticMap for Curve {
    fn eval(&self, z: Complex64) -> Vec3C {
        self.family.curve(z)
    }
}

/// Evaluator of α′ on C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity {
    pub family: CurveFamily,
}

impl AnalyticMap for Velocity {
    fn eval(&self, z: Complex64) -> Vec3C {
        self.family.velocity(z)
    }
}

/// Evaluator of V on C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalField {
    pub family: CurveFamily,
    pub spec: NormalFieldSpec,
}

impl NormalField {
    pub fn at(&self, t: f64) -> Vec3R {
        self.family.normal_field(self.spec, t)
    }
}

impl AnalyticMap for NormalField {
    fn eval(&self, z: Complex64) -> Vec3C {
        self.family.normal_field(self.spec, z)
    }
}

pub fn make_curve(family: CurveFamily) -> Result<Curve, FrameError> {
    family.validate()?;
    Ok(Curve { family })
}

/// Real frame evaluators along the curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameField {
    pub family: CurveFamily,
}

impl FrameField {
    /// Unit tangent α′/|α′|.
    pub fn tangent(&self, t: f64) -> Vec3R {
        let v = self.family.velocity(t);
        v.scale(1.0 / lorentz_dot(v, v).sqrt())
    }

    pub fn normal(&self, t: f64) -> Vec3R {
        self.family.normal(t)
    }

    pub fn binormal(&self, t: f64) -> Vec3R {
        self.family.binormal(t)
    }

    /// `n − b`; only meaningful for the lightlike-axis circle.
    pub fn e2(&self, t: f64) -> Option<Vec3R> {
        (self.family == CurveFamily::CircleLightlike).then(|| self.normal(t) - self.binormal(t))
    }

    /// `n + b`; only meaningful for the lightlike-axis circle.
    pub fn e3(&self, t: f64) -> Option<Vec3R> {
        (self.family == CurveFamily::CircleLightlike).then(|| self.normal(t) + self.binormal(t))
    }
}

pub fn make_frame(family: CurveFamily) -> Result<FrameField, FrameError> {
    family.validate()?;
    Ok(FrameField { family })
}

pub fn make_normal_field(family: CurveFamily, spec: NormalFieldSpec) -> Result<NormalField, FrameError> {
    family.validate()?;
    let a = spec.rate();
    if !a.is_finite() {
        return Err(FrameError::NonFinite(a));
    }
    if let NormalFieldSpec::Linear(a) = spec {
        if family == CurveFamily::CircleLightlike {
            return Err(FrameError::NonIntegrableLightlike);
        }
        if a <= 0.0 {
            return Err(FrameError::NonPositiveRate(a));
        }
    }
    Ok(NormalField { family, spec })
}

/// Björling data: analytic core curve α (with α′), unit timelike normal field V
/// and base parameter u0.
#[derive(Clone)]
pub struct BjorlingData {
    pub curve: SharedMap,
    pub velocity: SharedMap,
    pub normal: SharedMap,
    pub u0: f64,
    /// Source family, when built from one.
    pub source: Option<(CurveFamily, NormalFieldSpec)>,
}

impl std::fmt::Debug for BjorlingData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BjorlingData").field("u0", &self.u0).field("source", &self.source).finish_non_exhaustive()
    }
}

/// Residuals of the Björling-data invariants at one real parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataResiduals {
    /// ⟨α′, α′⟩, must be positive.
    pub speed_sq: f64,
    /// |⟨V, V⟩ + 1|.
    pub unit: f64,
    /// |⟨V, α′⟩|.
    pub orthogonality: f64,
    /// V.z
    pub time_component: f64,
}

impl BjorlingData {
    pub fn for_family(family: CurveFamily, spec: NormalFieldSpec) -> Result<Self, FrameError> {
        let normal = make_normal_field(family, spec)?;
        Ok(Self {
            curve: Arc::new(Curve { family }),
            velocity: Arc::new(Velocity { family }),
            normal: Arc::new(normal),
            u0: 0.0,
            source: Some((family, spec)),
        })
    }

    pub fn with_base(mut self, u0: f64) -> Self {
        self.u0 = u0;
        self
    }

    pub fn curve_at(&self, t: f64) -> Vec3R {
        self.curve.eval(Complex64::new(t, 0.0)).re()
    }

    pub fn normal_at(&self, t: f64) -> Vec3R {
        self.normal.eval(Complex64::new(t, 0.0)).re()
    }

    pub fn residuals(&self, t: f64) -> DataResiduals {
        let z = Complex64::new(t, 0.0);
        let d = self.velocity.eval(z).re();
        let v = self.normal.eval(z).re();
        DataResiduals {
            speed_sq: lorentz_dot(d, d),
            unit: (lorentz_dot(v, v) + 1.0).abs(),
            orthogonality: lorentz_dot(v, d).abs(),
            time_component: v.z,
        }
    }
}
