//! Job configuration: a single JSON document; command-line flags override
//! individual fields.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bjorling::QuadratureSpec;
use crate::catalog::{CatalogSurface, GeneratingCurve};
use crate::frames::{CurveFamily, NormalFieldSpec};
use crate::surface::{Domain, Grid};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

/// Family selector. `id` is either a catalog surface (`BendingTimelike`, …)
/// or a core-curve family (`CircleTimelike`, …) combined with `phi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    /// `"constant"` or `"linear"`, for core-curve ids only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub fn to_grid(&self) -> Grid {
        Grid::new(Domain::new(self.u_min, self.u_max, self.v_min, self.v_max), self.nu, self.nv)
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { u_min: -1.0, u_max: 1.0, v_min: -1.0, v_max: 1.0, nu: 21, nv: 21 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub oracle: f64,
    pub mean_curvature: f64,
    pub conformality: f64,
    pub recovery_curve: f64,
    pub recovery_normal: f64,
    pub equivariance: f64,
    pub null: f64,
    pub identity: f64,
    pub reconstruction: f64,
    pub period_zero: f64,
    pub period_oracle: f64,
    pub curvature_rel: f64,
    /// Base finite-difference step.
    pub h: f64,
    /// Nodes with `EG − F²` at or below this are branch points.
    pub branch: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            oracle: 1e-8,
            mean_curvature: 1e-5,
            conformality: 1e-6,
            recovery_curve: 1e-8,
            recovery_normal: 1e-6,
            equivariance: 1e-9,
            null: 1e-10,
            identity: 1e-12,
            reconstruction: 1e-10,
            period_zero: 1e-10,
            period_oracle: 1e-6,
            curvature_rel: 0.05,
            h: 1e-3,
            branch: crate::verify::BRANCH_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Obj,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub stem: String,
    pub formats: Vec<OutputFormat>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: PathBuf::from("out"), stem: "surface".into(), formats: vec![OutputFormat::Obj] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    H,
    Periods,
    Curvature,
    Equivariance,
}

/// Annulus and grid for the dual total curvature; `expected` overrides the
/// built-in oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurvatureSpec {
    pub r_in: f64,
    pub r_out: f64,
    pub nr: usize,
    pub ntheta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
}

impl Default for CurvatureSpec {
    fn default() -> Self {
        Self { r_in: 1e-3, r_out: 1e3, nr: 600, ntheta: 256, expected: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySpec {
    pub suite: Suite,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureSpec>,
    /// Number of sample points for the form identities.
    pub samples: usize,
}

impl Default for VerifySpec {
    fn default() -> Self {
        Self { suite: Suite::All, curvature: None, samples: 100 }
    }
}

/// Fault injection for harness tests.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DebugSpec {
    /// Adds `ε·v` to the x-component of the closed form.
    pub corrupt_catalog: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub family: FamilySpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub verify: VerifySpec,
    #[serde(default)]
    pub debug: DebugSpec,
}

/// What a family selector resolves to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subject {
    pub catalog: Option<CatalogSurface>,
    pub bjorling: Option<(CurveFamily, NormalFieldSpec)>,
}

impl Subject {
    pub fn name(&self) -> String {
        match (self.catalog, self.bjorling) {
            (Some(s), _) => s.name().to_string(),
            (None, Some((f, spec))) => format!("{}/{:?}", f.name(), spec),
            (None, None) => "?".into(),
        }
    }
}

pub const CATALOG_IDS: [&str; 10] = [
    "BendingTimelike",
    "BendingSpacelike",
    "LightlikeRotational",
    "HelicoidalTimelike",
    "HelicoidalSpacelikeI",
    "HelicoidalSpacelikeII",
    "EllipticCatenoid",
    "HyperbolicCatenoid",
    "HelicoidTimelikeConst",
    "EnneperSecondKind",
];

pub const CURVE_IDS: [&str; 6] =
    ["CircleTimelike", "CircleSpacelike", "CircleLightlike", "HelixTimelike", "HelixSpacelikeI", "HelixSpacelikeII"];

impl FamilySpec {
    fn need(&self, name: &str, v: Option<f64>) -> Result<f64, ConfigError> {
        let x = v.ok_or_else(|| ConfigError::new(format!("family.{name}"), format!("required for {}", self.id)))?;
        if !x.is_finite() {
            return Err(ConfigError::new(format!("family.{name}"), "must be finite"));
        }
        Ok(x)
    }

    pub fn resolve(&self) -> Result<Subject, ConfigError> {
        use CatalogSurface as S;
        let a = || self.need("a", self.a);
        let l = || self.need("lambda", self.lambda);
        let catalog = match self.id.as_str() {
            "BendingTimelike" => Some(S::BendingTimelike { a: a()? }),
            "BendingSpacelike" => Some(S::BendingSpacelike { a: a()? }),
            "LightlikeRotational" => Some(S::LightlikeRotational { a: a()? }),
            "HelicoidalTimelike" => Some(S::HelicoidalTimelike { a: a()?, lambda: l()? }),
            "HelicoidalSpacelikeI" => Some(S::HelicoidalSpacelikeI { a: a()?, lambda: l()? }),
            "HelicoidalSpacelikeII" => Some(S::HelicoidalSpacelikeII { a: a()?, lambda: l()? }),
            "EllipticCatenoid" => Some(S::EllipticCatenoid { a: a()? }),
            "HyperbolicCatenoid" => Some(S::HyperbolicCatenoid { a: a()? }),
            "HelicoidTimelikeConst" => Some(S::HelicoidTimelikeConst { a: a()?, lambda: l()? }),
            "EnneperSecondKind" => Some(match (self.lambda, self.mu, self.a) {
                (Some(_), Some(_), _) => S::EnneperSecondKind { lambda: l()?, mu: self.need("mu", self.mu)? },
                (None, None, Some(_)) => {
                    let g = GeneratingCurve::for_lightlike(a()?);
                    S::EnneperSecondKind { lambda: g.lambda, mu: g.mu }
                }
                _ => return Err(ConfigError::new("family", "EnneperSecondKind needs either both lambda and mu, or a")),
            }),
            _ => None,
        };
        if let Some(s) = catalog {
            if self.phi.is_some() {
                return Err(ConfigError::new("family.phi", "only valid with a core-curve id"));
            }
            s.validate().map_err(|e| ConfigError::new("family", e.to_string()))?;
            return Ok(Subject { catalog: Some(s), bjorling: s.bjorling_source() });
        }
        let family = match self.id.as_str() {
            "CircleTimelike" => CurveFamily::CircleTimelike,
            "CircleSpacelike" => CurveFamily::CircleSpacelike,
            "CircleLightlike" => CurveFamily::CircleLightlike,
            "HelixTimelike" => CurveFamily::HelixTimelike { lambda: l()? },
            "HelixSpacelikeI" => CurveFamily::HelixSpacelikeI { lambda: l()? },
            "HelixSpacelikeII" => CurveFamily::HelixSpacelikeII { lambda: l()? },
            other => {
                return Err(ConfigError::new(
                    "family.id",
                    format!("unknown id {other:?}; expected one of {CATALOG_IDS:?} or {CURVE_IDS:?}"),
                ))
            }
        };
        let rate = a()?;
        let spec = match self.phi.as_deref() {
            Some("constant") => NormalFieldSpec::Constant(rate),
            Some("linear") => NormalFieldSpec::Linear(rate),
            Some(other) => {
                return Err(ConfigError::new(
                    "family.phi",
                    format!("expected \"constant\" or \"linear\", got {other:?}"),
                ))
            }
            None => return Err(ConfigError::new("family.phi", format!("required for {}", self.id))),
        };
        crate::frames::make_normal_field(family, spec).map_err(|e| ConfigError::new("family", e.to_string()))?;
        Ok(Subject { catalog: CatalogSurface::from_bjorling(family, spec), bjorling: Some((family, spec)) })
    }
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: JobConfig = serde_json::from_str(text)
            .map_err(|e| ConfigError::new(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, crate::cli::CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| crate::cli::CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        Ok(Self::from_json(&text)?)
    }

    pub fn validate(&self) -> Result<Subject, ConfigError> {
        let g = &self.grid;
        for (name, x) in [("u_min", g.u_min), ("u_max", g.u_max), ("v_min", g.v_min), ("v_max", g.v_max)] {
            if !x.is_finite() {
                return Err(ConfigError::new(format!("grid.{name}"), "must be finite"));
            }
        }
        if g.u_min >= g.u_max || g.v_min >= g.v_max {
            return Err(ConfigError::new("grid", "bounds must satisfy min < max"));
        }
        if g.nu < 2 || g.nv < 2 {
            return Err(ConfigError::new("grid", format!("nu, nv must be ≥ 2, got {} × {}", g.nu, g.nv)));
        }
        self.quadrature.validate().map_err(|e| ConfigError::new("quadrature", e.to_string()))?;
        let t = &self.tolerances;
        for (name, x) in [
            ("oracle", t.oracle),
            ("mean_curvature", t.mean_curvature),
            ("conformality", t.conformality),
            ("recovery_curve", t.recovery_curve),
            ("recovery_normal", t.recovery_normal),
            ("equivariance", t.equivariance),
            ("null", t.null),
            ("identity", t.identity),
            ("reconstruction", t.reconstruction),
            ("period_zero", t.period_zero),
            ("period_oracle", t.period_oracle),
            ("curvature_rel", t.curvature_rel),
            ("h", t.h),
            ("branch", t.branch),
        ] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(ConfigError::new(format!("tolerances.{name}"), format!("must be > 0, got {x}")));
            }
        }
        if self.output.stem.is_empty() || self.output.stem.contains(['/', '\\']) {
            return Err(ConfigError::new("output.stem", "must be a non-empty file name"));
        }
        if let Some(c) = &self.verify.curvature {
            if !(c.r_in >= 0.0 && c.r_out > c.r_in && c.r_out.is_finite() && c.nr >= 2 && c.ntheta >= 4) {
                return Err(ConfigError::new("verify.curvature", "need 0 ≤ r_in < r_out, nr ≥ 2, ntheta ≥ 4"));
            }
        }
        if self.verify.samples == 0 {
            return Err(ConfigError::new("verify.samples", "must be ≥ 1"));
        }
        if !self.debug.corrupt_catalog.is_finite() {
            return Err(ConfigError::new("debug.corrupt_catalog", "must be finite"));
        }
        self.family.resolve()
    }
}
