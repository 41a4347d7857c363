//! Parametrized surface patches over rectangular parameter domains.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lorentz::{Mat3, Vec3R};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("quadrature did not reach tolerance {tol:e} at z = {re} + {im}i (estimate {estimate:e})")]
    QuadratureNonConvergence { re: f64, im: f64, tol: f64, estimate: f64 },
    #[error("non-finite surface value at (u, v) = ({u}, {v})")]
    NonFinite { u: f64, v: f64 },
}

/// `[u_min, u_max] × [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Domain {
    pub const fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Self {
        Self { u_min, u_max, v_min, v_max }
    }

    pub const fn square(r: f64) -> Self {
        Self::new(-r, r, -r, r)
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u_min && u <= self.u_max && v >= self.v_min && v <= self.v_max
    }

    pub fn is_valid(&self) -> bool {
        [self.u_min, self.u_max, self.v_min, self.v_max].iter().all(|x| x.is_finite())
            && self.u_min <= self.u_max
            && self.v_min <= self.v_max
    }
}

/// Tensor grid of `nu × nv` nodes spanning a domain, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub domain: Domain,
    pub nu: usize,
    pub nv: usize,
}

impl Grid {
    pub const fn new(domain: Domain, nu: usize, nv: usize) -> Self {
        Self { domain, nu, nv }
    }

    fn coord(min: f64, max: f64, n: usize, i: usize) -> f64 {
        if n <= 1 {
            min
        } else {
            min + (max - min) * (i as f64) / ((n - 1) as f64)
        }
    }

    pub fn u(&self, i: usize) -> f64 {
        Self::coord(self.domain.u_min, self.domain.u_max, self.nu, i)
    }

    pub fn v(&self, j: usize) -> f64 {
        Self::coord(self.domain.v_min, self.domain.v_max, self.nv, j)
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Nodes in row-major order (v outer, u inner), matching mesh vertex order.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        (0..self.nv).flat_map(|j| (0..self.nu).map(move |i| (i, j))).map(|(i, j)| (self.u(i), self.v(j))).collect()
    }

    /// Nodes strictly inside the domain (boundary rows and columns dropped).
    pub fn interior_nodes(&self) -> Vec<(f64, f64)> {
        if self.nu < 3 || self.nv < 3 {
            return Vec::new();
        }
        (1..self.nv - 1)
            .flat_map(|j| (1..self.nu - 1).map(move |i| (i, j)))
            .map(|(i, j)| (self.u(i), self.v(j)))
            .collect()
    }
}

type PointFn = dyn Fn(f64, f64) -> Result<Vec3R, EvalError> + Send + Sync;

/// A parametrized surface `(u, v) -> R³` on a rectangular domain.
#[derive(Clone)]
pub struct SurfacePatch {
    pub label: String,
    pub domain: Domain,
    eval: Arc<PointFn>,
}

impl fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfacePatch").field("label", &self.label).field("domain", &self.domain).finish_non_exhaustive()
    }
}

impl SurfacePatch {
    pub fn new<F>(label: impl Into<String>, domain: Domain, eval: F) -> Self
    where
        F: Fn(f64, f64) -> Result<Vec3R, EvalError> + Send + Sync + 'static,
    {
        Self { label: label.into(), domain, eval: Arc::new(eval) }
    }

    /// Patch from an infallible closed form.
    pub fn from_fn<F>(label: impl Into<String>, domain: Domain, f: F) -> Self
    where
        F: Fn(f64, f64) -> Vec3R + Send + Sync + 'static,
    {
        Self::new(label, domain, move |u, v| {
            let p = f(u, v);
            if p.is_finite() {
                Ok(p)
            } else {
                Err(EvalError::NonFinite { u, v })
            }
        })
    }

    pub fn point(&self, u: f64, v: f64) -> Result<Vec3R, EvalError> {
        (self.eval)(u, v)
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// `p ↦ M p + shift` applied to every point.
    pub fn transformed(&self, m: Mat3, shift: Vec3R) -> SurfacePatch {
        let inner = self.eval.clone();
        Self {
            label: format!("{} (moved)", self.label),
            domain: self.domain,
            eval: Arc::new(move |u, v| inner(u, v).map(|p| m.apply(p) + shift)),
        }
    }
}
