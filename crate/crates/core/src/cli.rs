//! The `sample`, `verify` and `families` commands.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::bjorling::{solve_bjorling, QuadratureSpec};
use crate::catalog::{eval_surface, CatalogSurface};
use crate::config::{
    ConfigError, CurvatureSpec, FamilySpec, GridSpec, JobConfig, OutputFormat, Subject, Suite, Tolerances,
};
use crate::frames::BjorlingData;
use crate::lorentz::Vec3;
use crate::mesh;
use crate::surface::{Domain, Grid, SurfacePatch};
use crate::verify::{self, CheckResult, VerificationReport};
use crate::weierstrass::{self, Chart, FormTriple, Loop};

pub const REPORT_SCHEMA: &str = "maxsurf-report/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("I/O error on {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("evaluation failed: {0}")]
    Eval(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.to_path_buf(), message: e.to_string() };
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io)?;
        }
    }
    fs::write(path, contents).map_err(io)
}

/// Closed-form patch, with the optional `ε·v` fault added to `x`.
pub fn catalog_patch(s: CatalogSurface, domain: Domain, corrupt: f64) -> SurfacePatch {
    if corrupt == 0.0 {
        return s.patch(domain).expect("validated surface");
    }
    SurfacePatch::from_fn(format!("catalog:{s:?}+fault"), domain, move |u, v| {
        eval_surface(&s, u, v) + Vec3::new(corrupt * v, 0.0, 0.0)
    })
}

fn bjorling_data(subject: &Subject) -> Option<BjorlingData> {
    subject.bjorling.map(|(f, spec)| BjorlingData::for_family(f, spec).expect("validated data"))
}

fn bjorling_patch(data: &BjorlingData, quad: QuadratureSpec, domain: Domain) -> Result<SurfacePatch, CliError> {
    solve_bjorling(data.clone(), quad, domain)
        .map_err(|e| CliError::Config(ConfigError::new("quadrature", e.to_string())))
}

/// The patch to sample or check: the closed form when one exists, otherwise
/// the numeric Björling solution.
fn primary_patch(cfg: &JobConfig, subject: &Subject) -> Result<SurfacePatch, CliError> {
    let domain = cfg.grid.to_grid().domain;
    match (subject.catalog, bjorling_data(subject)) {
        (Some(s), _) => Ok(catalog_patch(s, domain, cfg.debug.corrupt_catalog)),
        (None, Some(d)) => bjorling_patch(&d, cfg.quadrature, domain),
        (None, None) => unreachable!("resolved subject has a surface"),
    }
}

/// Writes the requested mesh formats; returns the paths written.
pub fn cmd_sample(cfg: &JobConfig) -> Result<Vec<PathBuf>, CliError> {
    let subject = cfg.validate()?;
    let grid = cfg.grid.to_grid();
    let patch = primary_patch(cfg, &subject)?;
    let m = mesh::sample(&patch, &grid, cfg.tolerances.branch).map_err(|e| CliError::Eval(e.to_string()))?;
    let header = format!(
        "maxsurf mesh\nfamily {}\ngrid {} x {} over [{}, {}] x [{}, {}]",
        subject.name(),
        grid.nu,
        grid.nv,
        grid.domain.u_min,
        grid.domain.u_max,
        grid.domain.v_min,
        grid.domain.v_max
    );
    let mut written = Vec::new();
    for fmt in &cfg.output.formats {
        let (ext, body) = match fmt {
            OutputFormat::Obj => ("obj", m.to_obj(&header)),
            OutputFormat::Csv => ("csv", m.to_csv()),
        };
        let path = cfg.output.dir.join(format!("{}.{ext}", cfg.output.stem));
        write_file(&path, &body)?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub family: FamilySpec,
    pub subject: String,
    pub suite: Suite,
    pub grid: GridSpec,
    pub quadrature: QuadratureSpec,
    pub tolerances: Tolerances,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Deterministic sample points in the parameter rectangle (Halton bases 2, 3).
pub fn sample_points(domain: &Domain, n: usize) -> Vec<Complex64> {
    fn radical_inverse(mut i: usize, base: usize) -> f64 {
        let (mut f, mut r) = (1.0, 0.0);
        while i > 0 {
            f /= base as f64;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    }
    (1..=n)
        .map(|i| {
            let s = radical_inverse(i, 2);
            let t = radical_inverse(i, 3);
            Complex64::new(
                domain.u_min + s * (domain.u_max - domain.u_min),
                domain.v_min + t * (domain.v_max - domain.v_min),
            )
        })
        .collect()
}

fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(1.0)
}

fn triple_scale(p: &[Complex64; 3]) -> f64 {
    p.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Null-condition residual `|φ1² + φ2² ∓ φ3²| / max(1, |φ|²)` over `zs`.
pub fn null_residual(t: &FormTriple, zs: &[Complex64]) -> f64 {
    zs.iter()
        .map(|&z| {
            let s = triple_scale(&t.eval(z));
            t.null_residual(z) / (s * s).max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Largest relative difference between two triples over `zs`.
pub fn triple_difference(a: &FormTriple, b: &FormTriple, zs: &[Complex64]) -> f64 {
    zs.iter()
        .map(|&z| {
            let (p, q) = (a.eval(z), b.eval(z));
            let e = (0..3).map(|k| (p[k] - q[k]).norm()).fold(0.0, f64::max);
            rel(e, triple_scale(&q))
        })
        .fold(0.0, f64::max)
}

/// `(g, ω) → φ` reconstruction residual over `zs`.
pub fn reconstruction_residual(t: &FormTriple, zs: &[Complex64]) -> Result<f64, weierstrass::WeierstrassError> {
    let w = weierstrass::weierstrass_pair(t)?;
    Ok(zs
        .iter()
        .map(|&z| {
            let (p, q) = (w.reconstruct(z), t.eval(z));
            let e = (0..3).map(|k| (p[k] - q[k]).norm()).fold(0.0, f64::max);
            rel(e, triple_scale(&q))
        })
        .fold(0.0, f64::max))
}

/// Exp-chart form at `z` against punctured form at `e^z` times `e^z`.
pub fn chart_coherence(exp: &FormTriple, punct: &FormTriple, zs: &[Complex64]) -> f64 {
    zs.iter()
        .map(|&z| {
            let w = z.exp();
            let (p, q) = (exp.eval(z), punct.eval(w));
            let e = (0..3).map(|k| (p[k] - q[k] * w).norm()).fold(0.0, f64::max);
            rel(e, triple_scale(&p))
        })
        .fold(0.0, f64::max)
}

/// Real part of the period of `φ_k` on the unit circle predicted by residues,
/// for integer `a = n`.
pub fn period_oracle(s: &CatalogSurface, k: usize) -> Option<f64> {
    let n = s.rate()?;
    if n.fract() != 0.0 || n < 1.0 {
        return None;
    }
    if n != 1.0 || k != 2 {
        return Some(0.0);
    }
    match *s {
        CatalogSurface::BendingSpacelike { .. } => Some(-PI),
        CatalogSurface::HelicoidalSpacelikeI { lambda, .. } => Some(PI * (lambda + (lambda * lambda - 1.0).sqrt())),
        CatalogSurface::HelicoidalSpacelikeII { lambda, .. } => Some(-PI * (lambda + (lambda * lambda + 1.0).sqrt())),
        _ => None,
    }
}

/// Total curvature of the dual minimal surface, where it is known in closed
/// form: `−4π(n + 1)` for the spacelike bending family at integer `a = n`,
/// `−4π` for the lightlike rotational family.
pub fn curvature_oracle(s: &CatalogSurface) -> Option<(f64, CurvatureSpec, Chart)> {
    match *s {
        CatalogSurface::BendingSpacelike { a } if a.fract() == 0.0 && a >= 1.0 => {
            Some((-4.0 * PI * (a + 1.0), CurvatureSpec::default(), Chart::Punctured))
        }
        CatalogSurface::LightlikeRotational { .. } => {
            Some((-4.0 * PI, CurvatureSpec { r_in: 0.0, ..CurvatureSpec::default() }, Chart::Exp))
        }
        _ => None,
    }
}

struct Ctx<'a> {
    cfg: &'a JobConfig,
    subject: Subject,
    grid: Grid,
    tol: Tolerances,
    data: Option<BjorlingData>,
}

impl Ctx<'_> {
    fn oracle(&self, report: &mut VerificationReport) -> Result<(), CliError> {
        if let (Some(s), Some(d)) = (self.subject.catalog, &self.data) {
            let cat = catalog_patch(s, self.grid.domain, self.cfg.debug.corrupt_catalog);
            let bj = bjorling_patch(d, self.cfg.quadrature, self.grid.domain)?;
            let dev = verify::max_deviation(&bj, &cat, &self.grid);
            report.push(CheckResult::below("oracle", dev, self.tol.oracle).with_grid(self.grid));
        }
        Ok(())
    }

    fn mean_curvature(&self, report: &mut VerificationReport) -> Result<(), CliError> {
        let p = primary_patch(self.cfg, &self.subject)?;
        report.push(verify::check_mean_curvature(&p, &self.grid, self.tol.h, self.tol.branch, self.tol.mean_curvature));
        Ok(())
    }

    fn conformality_and_recovery(&self, report: &mut VerificationReport) -> Result<(), CliError> {
        let Some(d) = &self.data else { return Ok(()) };
        let p = primary_patch(self.cfg, &self.subject)?;
        report.push(verify::check_conformality(&p, &self.grid, self.tol.h, self.tol.branch, self.tol.conformality));
        let us: Vec<f64> = (0..self.grid.nu).map(|i| self.grid.u(i)).collect();
        for mut c in verify::bjorling_recovery(&p, d, &us).checks {
            let tol = if c.name == "recovery_curve" { self.tol.recovery_curve } else { self.tol.recovery_normal };
            c.tolerance = tol;
            c.passed = c.max_residual.is_finite() && c.max_residual < tol;
            report.push(c);
        }
        Ok(())
    }

    fn equivariance(&self, report: &mut VerificationReport, required: bool) -> Result<(), CliError> {
        let grp = self.subject.catalog.and_then(|s| s.symmetry());
        let Some(grp) = grp else {
            if required {
                return Err(
                    ConfigError::new("verify.suite", format!("{} has no symmetry group", self.subject.name())).into()
                );
            }
            return Ok(());
        };
        let p = primary_patch(self.cfg, &self.subject)?;
        let g = Grid::new(self.grid.domain, 11, 11);
        let mut c = verify::equivariance(&p, &grp, &[-1.0, -0.3, 0.3, 1.0], &g).checks.remove(0);
        c.tolerance = self.tol.equivariance;
        c.passed = c.max_residual.is_finite() && c.max_residual < c.tolerance;
        report.push(c);
        Ok(())
    }

    fn forms(&self, report: &mut VerificationReport) {
        let zs = sample_points(&self.grid.domain, self.cfg.verify.samples);
        let printed = self.subject.catalog.and_then(|s| weierstrass::forms_for(&s, Chart::Exp).ok());
        let derived = self.data.as_ref().map(weierstrass::forms_from_data);
        let mut null = 0.0_f64;
        for t in printed.iter().chain(derived.iter()) {
            null = null.max(null_residual(t, &zs));
        }
        if printed.is_some() || derived.is_some() {
            report.push(CheckResult::below("null_condition", null, self.tol.null));
        }
        if let (Some(p), Some(d)) = (&printed, &derived) {
            report.push(CheckResult::below("form_identity", triple_difference(p, d, &zs), self.tol.identity));
        }
        if let Some(t) = printed.as_ref().or(derived.as_ref()) {
            report.push(match reconstruction_residual(t, &zs) {
                Ok(r) => CheckResult::below("reconstruction", r, self.tol.reconstruction),
                Err(e) => CheckResult::failed("reconstruction", e.to_string()),
            });
        }
        if let (Some(s), Some(p)) = (self.subject.catalog, &printed) {
            if let Ok(q) = weierstrass::forms_for(&s, Chart::Punctured) {
                report.push(CheckResult::below(
                    "chart_coherence",
                    chart_coherence(p, &q, &zs),
                    self.tol.reconstruction,
                ));
            }
        }
    }

    fn periods(&self, report: &mut VerificationReport, required: bool) -> Result<(), CliError> {
        let s = self.subject.catalog;
        let forms = s.and_then(|s| weierstrass::forms_for(&s, Chart::Punctured).ok());
        let (Some(s), Some(t)) = (s, forms) else {
            if required {
                return Err(ConfigError::new(
                    "verify.suite",
                    format!("{} has no punctured chart", self.subject.name()),
                )
                .into());
            }
            return Ok(());
        };
        if period_oracle(&s, 1).is_none() {
            if required {
                return Err(ConfigError::new("family.a", "periods are defined for integer a ≥ 1").into());
            }
            return Ok(());
        }
        for k in 1..=3 {
            let name = format!("period_phi{k}");
            let expected = period_oracle(&s, k).unwrap_or(0.0);
            let tol = if expected == 0.0 { self.tol.period_zero } else { self.tol.period_oracle };
            let c = match weierstrass::period(&t, k, &Loop::unit(), 64) {
                Ok(p) => {
                    let mut c = CheckResult::below(&name, (p.re - expected).abs(), tol).with_detail(format!(
                        "period = {:.16e} + {:.16e}i, expected real part {expected:.16e}",
                        p.re, p.im
                    ));
                    c.value = Some(p.re);
                    c
                }
                Err(e) => CheckResult::failed(&name, e.to_string()),
            };
            report.push(c);
        }
        Ok(())
    }

    fn curvature(&self, report: &mut VerificationReport, required: bool) {
        let oracle = self.subject.catalog.and_then(|s| curvature_oracle(&s));
        if oracle.is_none() && self.cfg.verify.curvature.is_none() && !required {
            return;
        }
        let (mut expected, mut spec, mut chart) = match oracle {
            Some((e, spec, chart)) => (Some(e), spec, chart),
            None => (None, CurvatureSpec::default(), Chart::Exp),
        };
        if let Some(c) = self.cfg.verify.curvature {
            spec = c;
            if c.expected.is_some() {
                expected = c.expected;
            }
        }
        let forms = match (self.subject.catalog, &self.data) {
            (Some(s), _) if chart == Chart::Punctured => weierstrass::forms_for(&s, Chart::Punctured).ok(),
            (Some(s), d) => {
                weierstrass::forms_for(&s, Chart::Exp).ok().or_else(|| d.as_ref().map(weierstrass::forms_from_data))
            }
            (None, d) => d.as_ref().map(weierstrass::forms_from_data),
        };
        let Some(forms) = forms else {
            report.push(CheckResult::failed("total_curvature_dual", "no Weierstrass forms for this family"));
            return;
        };
        chart = forms.chart;
        let dual = weierstrass::dualize(&forms);
        let result = weierstrass::weierstrass_pair(&dual)
            .and_then(|w| weierstrass::total_curvature(&w, (spec.r_in, spec.r_out), (spec.nr, spec.ntheta)));
        let c = match result {
            Ok(k) => {
                let mut c = match expected {
                    Some(e) => CheckResult::below("total_curvature_dual", ((k - e) / e).abs(), self.tol.curvature_rel)
                        .with_detail(format!(
                            "expected {e:.16e}, chart {chart:?}, annulus [{}, {}]",
                            spec.r_in, spec.r_out
                        )),
                    None => CheckResult::below("total_curvature_dual", 0.0, self.tol.curvature_rel)
                        .with_detail(format!("no oracle; chart {chart:?}, annulus [{}, {}]", spec.r_in, spec.r_out)),
                };
                c.passed = c.passed && k.is_finite();
                c.value = Some(k);
                c
            }
            Err(e) => CheckResult::failed("total_curvature_dual", e.to_string()),
        };
        report.push(c);
    }
}

/// Runs the configured suite and writes `<stem>.report.json`.
pub fn cmd_verify(cfg: &JobConfig) -> Result<Report, CliError> {
    let subject = cfg.validate()?;
    let ctx = Ctx { cfg, subject, grid: cfg.grid.to_grid(), tol: cfg.tolerances, data: bjorling_data(&subject) };
    let mut r = VerificationReport::default();
    match cfg.verify.suite {
        Suite::All => {
            ctx.oracle(&mut r)?;
            ctx.mean_curvature(&mut r)?;
            ctx.conformality_and_recovery(&mut r)?;
            ctx.equivariance(&mut r, false)?;
            ctx.forms(&mut r);
            ctx.periods(&mut r, false)?;
            ctx.curvature(&mut r, false);
        }
        Suite::H => ctx.mean_curvature(&mut r)?,
        Suite::Periods => ctx.periods(&mut r, true)?,
        Suite::Curvature => ctx.curvature(&mut r, true),
        Suite::Equivariance => ctx.equivariance(&mut r, true)?,
    }
    let report = Report {
        schema: REPORT_SCHEMA,
        family: cfg.family.clone(),
        subject: subject.name(),
        suite: cfg.verify.suite,
        grid: cfg.grid,
        quadrature: cfg.quadrature,
        tolerances: cfg.tolerances,
        passed: r.passed(),
        checks: r.checks,
    };
    let path = cfg.output.dir.join(format!("{}.report.json", cfg.output.stem));
    write_file(&path, &report.to_json())?;
    Ok(report)
}

/// Human-readable list of family ids and their parameter constraints.
pub fn families_text() -> String {
    let rows = [
        ("BendingTimelike", "a > 0", "circle, timelike axis, phi = a t"),
        ("BendingSpacelike", "a > 0", "circle, spacelike axis, phi = a t"),
        ("LightlikeRotational", "a real", "circle, lightlike axis, phi = a"),
        ("HelicoidalTimelike", "a > 0, 0 < lambda < 1", "helix, timelike axis, phi = a t"),
        ("HelicoidalSpacelikeI", "a > 0, lambda > 1", "helix of type I, spacelike axis, phi = a t"),
        ("HelicoidalSpacelikeII", "a > 0, lambda > 0", "helix of type II, spacelike axis, phi = a t"),
        ("EllipticCatenoid", "a real", "circle, timelike axis, phi = a"),
        ("HyperbolicCatenoid", "a real", "circle, spacelike axis, phi = a"),
        ("HelicoidTimelikeConst", "a real, 0 < lambda < 1", "helix, timelike axis, phi = a"),
        ("EnneperSecondKind", "lambda > 0, mu real; or a real", "orbit of h(v) = lambda v^3 + mu"),
    ];
    let mut s = String::from("catalog surfaces:\n");
    for (id, c, d) in rows {
        s.push_str(&format!("  {id:<24}{c:<34}{d}\n"));
    }
    s.push_str("core curves (with \"phi\": \"constant\" | \"linear\" and rate a):\n");
    for (id, c) in [
        ("CircleTimelike", ""),
        ("CircleSpacelike", ""),
        ("CircleLightlike", "constant phi only"),
        ("HelixTimelike", "0 < lambda < 1"),
        ("HelixSpacelikeI", "lambda > 1"),
        ("HelixSpacelikeII", "lambda > 0"),
    ] {
        s.push_str(&format!("  {id:<24}{c}\n"));
    }
    s
}
