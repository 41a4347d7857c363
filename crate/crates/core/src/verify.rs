//! Differential-geometric checks on surface patches: fundamental forms, the
//! mean-curvature residual, spacelike/branch detection, recovery of Björling
//! data and equivariance under motion groups.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diff::{self, Partials};
use crate::frames::BjorlingData;
use crate::lorentz::{lorentz_cross, lorentz_dot, Vec3, Vec3R};
pub use crate::motion::MotionGroup;
use crate::surface::{Domain, EvalError, Grid, SurfacePatch};

/// Base finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// A node is treated as a branch point when `EG − F² ≤ BRANCH_TOL`. Near the
/// singular set the conformal factor vanishes and finite-difference roundoff
/// in the second form is amplified by `1/(EG − F²)`.
pub const BRANCH_TOL: f64 = 1e-5;

/// First and second fundamental forms at one parameter point, with respect to
/// the unit normal `N = X_u × X_v / |⟨·,·⟩|^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub normal: Option<Vec3R>,
    pub branch: bool,
}

impl FundamentalForms {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// `|l G − 2 m F + n E| / (2 |EG − F²|)`.
    pub fn mean_curvature(&self) -> f64 {
        (self.l * self.g - 2.0 * self.m * self.f + self.n * self.e).abs() / (2.0 * self.det().abs())
    }

    /// `max(|E − G|, |F|)` relative to `(E + G) / 2`.
    pub fn conformality_defect(&self) -> f64 {
        (self.e - self.g).abs().max(self.f.abs()) / (0.5 * (self.e.abs() + self.g.abs())).max(f64::MIN_POSITIVE)
    }
}

fn first_form(d: &Partials) -> (f64, f64, f64) {
    (lorentz_dot(d.xu, d.xu), lorentz_dot(d.xu, d.xv), lorentz_dot(d.xv, d.xv))
}

/// Non-finite forms are not branch points; they propagate as failures.
fn is_branch(e: f64, f: f64, g: f64, tol: f64) -> bool {
    e * g - f * f <= tol
}

pub fn forms_from_partials(d: &Partials, branch_tol: f64) -> FundamentalForms {
    let (e, f, g) = first_form(d);
    let branch = is_branch(e, f, g, branch_tol);
    let normal = lorentz_cross(d.xu, d.xv).lorentz_normalized();
    let (l, m, n) = match normal {
        Some(nv) => (lorentz_dot(d.xuu, nv), lorentz_dot(d.xuv, nv), lorentz_dot(d.xvv, nv)),
        None => (f64::NAN, f64::NAN, f64::NAN),
    };
    let finite = (e * g - f * f).is_finite();
    FundamentalForms { e, f, g, l, m, n, normal, branch: branch || (finite && normal.is_none()) }
}

/// Forms at `(u, v)`, flagging the node as a branch point when `EG − F² ≤ BRANCH_TOL`.
pub fn fundamental_forms(p: &SurfacePatch, u: f64, v: f64, h: f64) -> Result<FundamentalForms, EvalError> {
    fundamental_forms_with(p, u, v, h, BRANCH_TOL)
}

pub fn fundamental_forms_with(
    p: &SurfacePatch,
    u: f64,
    v: f64,
    h: f64,
    branch_tol: f64,
) -> Result<FundamentalForms, EvalError> {
    Ok(forms_from_partials(&diff::partials(p, u, v, h)?, branch_tol))
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Computed quantity, for checks that measure one (periods, curvature).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub excluded: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    /// Passes iff `max_residual` is finite and below `tolerance`.
    pub fn below(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            passed: max_residual.is_finite() && max_residual < tolerance,
            value: None,
            grid: None,
            excluded: Vec::new(),
            detail: None,
        }
    }

    /// Passes iff `max_residual` exceeds `tolerance` (detector sanity checks).
    pub fn above(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        let mut c = Self::below(name, max_residual, tolerance);
        c.passed = max_residual.is_finite() && max_residual > tolerance;
        c
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            max_residual: f64::NAN,
            tolerance: 0.0,
            passed: false,
            value: None,
            grid: None,
            excluded: Vec::new(),
            detail: Some(detail.into()),
        }
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Maximum of `f` over the nodes, skipping (and listing) branch points.
/// Evaluation errors count as infinite residuals.
fn grid_max<F>(p: &SurfacePatch, nodes: &[(f64, f64)], h: f64, branch_tol: f64, f: F) -> (f64, Vec<(f64, f64)>)
where
    F: Fn(&FundamentalForms) -> f64 + Sync,
{
    let vals: Vec<Option<f64>> = nodes
        .par_iter()
        .map(|&(u, v)| match fundamental_forms_with(p, u, v, h, branch_tol) {
            Ok(ff) if ff.branch => None,
            Ok(ff) => Some(f(&ff)),
            Err(_) => Some(f64::INFINITY),
        })
        .collect();
    let mut max = 0.0_f64;
    let mut excluded = Vec::new();
    for (val, &node) in vals.iter().zip(nodes) {
        match val {
            None => excluded.push(node),
            Some(x) if x.is_nan() => max = f64::NAN,
            Some(x) => {
                if !max.is_nan() {
                    max = max.max(*x)
                }
            }
        }
    }
    (max, excluded)
}

/// Largest mean-curvature residual over the interior nodes of `grid`.
/// Branch points are excluded from the maximum and returned.
pub fn mean_curvature_residual(p: &SurfacePatch, grid: &Grid, h: f64, branch_tol: f64) -> (f64, Vec<(f64, f64)>) {
    grid_max(p, &grid.interior_nodes(), h, branch_tol, FundamentalForms::mean_curvature)
}

pub fn check_mean_curvature(p: &SurfacePatch, grid: &Grid, h: f64, branch_tol: f64, tol: f64) -> CheckResult {
    let (r, excluded) = mean_curvature_residual(p, grid, h, branch_tol);
    let mut c = CheckResult::below("mean_curvature", r, tol).with_grid(*grid);
    c.excluded = excluded;
    c
}

pub fn check_conformality(p: &SurfacePatch, grid: &Grid, h: f64, branch_tol: f64, tol: f64) -> CheckResult {
    let (r, excluded) = grid_max(p, &grid.interior_nodes(), h, branch_tol, FundamentalForms::conformality_defect);
    let mut c = CheckResult::below("conformality", r, tol).with_grid(*grid);
    c.excluded = excluded;
    c
}

/// Spacelike mask over all nodes of `grid` (row-major, `v` outer).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeMask {
    pub grid: Grid,
    pub mask: Vec<bool>,
}

impl SpacelikeMask {
    pub fn all(&self) -> bool {
        self.mask.iter().all(|&b| b)
    }

    pub fn count_false(&self) -> usize {
        self.mask.iter().filter(|&&b| !b).count()
    }

    pub fn degenerate_nodes(&self) -> Vec<(f64, f64)> {
        self.grid.nodes().into_iter().zip(&self.mask).filter(|(_, &b)| !b).map(|(n, _)| n).collect()
    }
}

/// `E > 0` and `EG − F² > branch_tol` at each node, from first derivatives.
pub fn spacelike_region(p: &SurfacePatch, grid: &Grid, branch_tol: f64) -> SpacelikeMask {
    let mask = grid
        .nodes()
        .par_iter()
        .map(|&(u, v)| match diff::partials(p, u, v, DEFAULT_STEP) {
            Ok(d) => {
                let (e, f, g) = first_form(&d);
                e > 0.0 && !is_branch(e, f, g, branch_tol)
            }
            Err(_) => false,
        })
        .collect();
    SpacelikeMask { grid: *grid, mask }
}

pub const RECOVERY_CURVE_TOL: f64 = 1e-8;
pub const RECOVERY_NORMAL_TOL: f64 = 1e-6;

/// Curve error, surface normal and prescribed normal at one node.
type RecoveryRow = (f64, Option<Vec3R>, Vec3R);

/// `‖X(u, 0) − α(u)‖` and `‖±N(u, 0) − V(u)‖` over `u_grid`; the sign is fixed
/// at the first node and kept for the rest.
pub fn bjorling_recovery(p: &SurfacePatch, data: &BjorlingData, u_grid: &[f64]) -> VerificationReport {
    let rows: Vec<Result<RecoveryRow, EvalError>> = u_grid
        .par_iter()
        .map(|&u| {
            let x = p.point(u, 0.0)?;
            let d = diff::partials(p, u, 0.0, DEFAULT_STEP)?;
            let n = lorentz_cross(d.xu, d.xv).lorentz_normalized();
            Ok(((x - data.curve_at(u)).norm_euclid(), n, data.normal_at(u)))
        })
        .collect();
    let mut report = VerificationReport::default();
    let mut curve = 0.0_f64;
    let mut normal = 0.0_f64;
    let mut sign: Option<f64> = None;
    for (row, &u) in rows.iter().zip(u_grid) {
        match row {
            Ok((c, n, v)) => {
                curve = curve.max(*c);
                match n {
                    Some(n) => {
                        let s = *sign.get_or_insert_with(|| {
                            if (*n - *v).norm_euclid() <= (*n + *v).norm_euclid() {
                                1.0
                            } else {
                                -1.0
                            }
                        });
                        normal = normal.max((n.scale(s) - *v).norm_euclid());
                    }
                    None => {
                        report.push(CheckResult::failed(
                            "recovery_normal",
                            format!("degenerate tangent plane at u = {u}"),
                        ));
                        normal = f64::NAN;
                    }
                }
            }
            Err(e) => {
                report.push(CheckResult::failed("recovery_curve", e.to_string()));
                return report;
            }
        }
    }
    report.push(CheckResult::below("recovery_curve", curve, RECOVERY_CURVE_TOL));
    let mut n = CheckResult::below("recovery_normal", normal, RECOVERY_NORMAL_TOL);
    if let Some(s) = sign {
        n = n.with_detail(if s > 0.0 { "N = +V" } else { "N = -V" });
    }
    if !report.checks.iter().any(|c| c.name == "recovery_normal") {
        report.push(n);
    }
    report
}

pub const EQUIVARIANCE_TOL: f64 = 1e-9;

/// `max ‖Ψ(θ)·X(u, v) − X(u + θ, v)‖` over `thetas` and all nodes of `grid`.
pub fn equivariance_residual(p: &SurfacePatch, grp: &MotionGroup, thetas: &[f64], grid: &Grid) -> f64 {
    let nodes = grid.nodes();
    let vals: Vec<f64> = nodes
        .par_iter()
        .map(|&(u, v)| {
            let mut worst = 0.0_f64;
            for &t in thetas {
                let r = match (p.point(u, v), p.point(u + t, v)) {
                    (Ok(x), Ok(y)) => (grp.apply(t, x) - y).max_abs(),
                    _ => f64::INFINITY,
                };
                worst = worst.max(r);
            }
            worst
        })
        .collect();
    vals.into_iter().fold(0.0, f64::max)
}

pub fn equivariance(p: &SurfacePatch, grp: &MotionGroup, thetas: &[f64], grid: &Grid) -> VerificationReport {
    let r = equivariance_residual(p, grp, thetas, grid);
    let c = CheckResult::below("equivariance", r, EQUIVARIANCE_TOL)
        .with_grid(*grid)
        .with_detail(format!("{grp:?} at θ ∈ {thetas:?}"));
    VerificationReport { checks: vec![c] }
}

/// Largest `‖p − q‖` between two patches over the nodes of `grid`.
pub fn max_deviation(p: &SurfacePatch, q: &SurfacePatch, grid: &Grid) -> f64 {
    let vals: Vec<f64> = grid
        .nodes()
        .par_iter()
        .map(|&(u, v)| match (p.point(u, v), q.point(u, v)) {
            (Ok(a), Ok(b)) => (a - b).max_abs(),
            _ => f64::INFINITY,
        })
        .collect();
    vals.into_iter().fold(0.0, f64::max)
}

/// The hyperbolic plane `(sinh v cos u, sinh v sin u, cosh v)`: spacelike,
/// umbilic, `|H| = 1`. Used to confirm the residual detects non-maximal input.
pub fn control_surface(domain: Domain) -> SurfacePatch {
    SurfacePatch::from_fn("control:hyperboloid", domain, |u, v| {
        Vec3::new(v.sinh() * u.cos(), v.sinh() * u.sin(), v.cosh())
    })
}
