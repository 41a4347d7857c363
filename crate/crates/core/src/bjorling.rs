//! Numeric solution of the Björling problem,
//!
//! `X(u, v) = Re( α(z) + i ∫_{u0}^{z} V(w) × α′(w) dw )`, `z = u + iv`,
//!
//! integrated along the straight segment `u0 → z`. Every built-in integrand is
//! entire, so the choice of path does not matter.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diff;
use crate::frames::BjorlingData;
use crate::lorentz::{lorentz_cross, lorentz_dot, Vec3C, Vec3R};
use crate::quadrature::{adaptive_simpson, GaussLegendreRule};
use crate::surface::{Domain, EvalError, SurfacePatch};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BjorlingError {
    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("tangent plane degenerates at (u, 0) = ({u}, 0)")]
    DegenerateTangentPlane { u: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum QuadratureRule {
    GaussLegendre {
        nodes: usize,
    },
    /// Tolerance is relative to `max(1, |integral|)`.
    AdaptiveSimpson {
        tol: f64,
    },
}

/// Adaptive Simpson takes over from the fixed rule when `|v| > above_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fallback {
    pub above_v: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    #[serde(flatten)]
    pub rule: QuadratureRule,
    #[serde(default)]
    pub fallback: Option<Fallback>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::GaussLegendre { nodes: 64 },
            fallback: Some(Fallback { above_v: 2.0, tol: 1e-12 }),
        }
    }
}

const SIMPSON_MAX_DEPTH: u32 = 48;

impl QuadratureSpec {
    pub fn gauss_legendre(nodes: usize) -> Self {
        Self { rule: QuadratureRule::GaussLegendre { nodes }, fallback: None }
    }

    pub fn adaptive_simpson(tol: f64) -> Self {
        Self { rule: QuadratureRule::AdaptiveSimpson { tol }, fallback: None }
    }

    pub fn validate(&self) -> Result<(), BjorlingError> {
        let check_tol = |tol: f64| {
            if tol > 0.0 && tol.is_finite() {
                Ok(())
            } else {
                Err(BjorlingError::InvalidQuadrature(format!("tolerance must be > 0, got {tol}")))
            }
        };
        match self.rule {
            QuadratureRule::GaussLegendre { nodes } if nodes < 4 => {
                return Err(BjorlingError::InvalidQuadrature(format!(
                    "Gauss-Legendre needs at least 4 nodes, got {nodes}"
                )))
            }
            QuadratureRule::AdaptiveSimpson { tol } => check_tol(tol)?,
            _ => {}
        }
        if let Some(fb) = self.fallback {
            check_tol(fb.tol)?;
            if !(fb.above_v >= 0.0) {
                return Err(BjorlingError::InvalidQuadrature("fallback threshold must be ≥ 0".into()));
            }
        }
        Ok(())
    }
}

/// Björling data bound to a quadrature rule.
#[derive(Debug, Clone)]
pub struct BjorlingSolver {
    data: BjorlingData,
    quad: QuadratureSpec,
    gl: Option<GaussLegendreRule>,
}

impl BjorlingSolver {
    pub fn new(data: BjorlingData, quad: QuadratureSpec) -> Result<Self, BjorlingError> {
        quad.validate()?;
        let gl = match quad.rule {
            QuadratureRule::GaussLegendre { nodes } => Some(GaussLegendreRule::new(nodes)),
            QuadratureRule::AdaptiveSimpson { .. } => None,
        };
        Ok(Self { data, quad, gl })
    }

    pub fn data(&self) -> &BjorlingData {
        &self.data
    }

    fn integrand(&self, w: Complex64) -> Vec3C {
        lorentz_cross(self.data.normal.eval(w), self.data.velocity.eval(w))
    }

    fn simpson(&self, a: Complex64, z: Complex64, tol: f64) -> Result<Vec3C, EvalError> {
        let f = |w| self.integrand(w);
        // a first coarse pass fixes the scale the relative tolerance refers to
        let scale = GaussLegendreRule::new(16).integrate(a, z, f).max_abs().max(1.0);
        adaptive_simpson(a, z, f, tol * scale, SIMPSON_MAX_DEPTH).map_err(|e| EvalError::QuadratureNonConvergence {
            re: z.re,
            im: z.im,
            tol: tol * scale,
            estimate: e.estimate,
        })
    }

    /// `∫_{u0}^{z} V × α′ dw`.
    pub fn integral(&self, z: Complex64) -> Result<Vec3C, EvalError> {
        let a = Complex64::new(self.data.u0, 0.0);
        if let Some(fb) = self.quad.fallback {
            if z.im.abs() > fb.above_v {
                return self.simpson(a, z, fb.tol);
            }
        }
        match (self.quad.rule, &self.gl) {
            (QuadratureRule::GaussLegendre { .. }, Some(gl)) => Ok(gl.integrate(a, z, |w| self.integrand(w))),
            (QuadratureRule::AdaptiveSimpson { tol }, _) => self.simpson(a, z, tol),
            (QuadratureRule::GaussLegendre { nodes }, None) => {
                Ok(GaussLegendreRule::new(nodes).integrate(a, z, |w| self.integrand(w)))
            }
        }
    }

    pub fn point(&self, u: f64, v: f64) -> Result<Vec3R, EvalError> {
        let z = Complex64::new(u, v);
        let i = Complex64::i();
        let x = self.data.curve.eval(z) + self.integral(z)?.scale(i);
        let p = x.re();
        if p.is_finite() {
            Ok(p)
        } else {
            Err(EvalError::NonFinite { u, v })
        }
    }
}

/// Solves the Björling problem for `data` and exposes the solution on `domain`.
pub fn solve_bjorling(data: BjorlingData, quad: QuadratureSpec, domain: Domain) -> Result<SurfacePatch, BjorlingError> {
    let label = match data.source {
        Some((family, spec)) => format!("bjorling:{}:{:?}", family.name(), spec),
        None => "bjorling".to_string(),
    };
    let solver = BjorlingSolver::new(data, quad)?;
    Ok(SurfacePatch::new(label, domain, move |u, v| solver.point(u, v)))
}

/// Unit timelike normal of `patch` at `(u, 0)`, from finite differences,
/// normalised by `|⟨N, N⟩|^{1/2}` and oriented into the time cone of `V(u)`.
/// Equals `V(u)` when the patch solves the Björling problem for `data`.
pub fn reference_normal(data: &BjorlingData, patch: &SurfacePatch, u: f64) -> Result<Vec3R, BjorlingError> {
    let d = diff::partials(patch, u, 0.0, 1e-3)?;
    let n = lorentz_cross(d.xu, d.xv).lorentz_normalized().ok_or(BjorlingError::DegenerateTangentPlane { u })?;
    if lorentz_dot(n, data.normal_at(u)) > 0.0 {
        Ok(-n)
    } else {
        Ok(n)
    }
}
