//! Flat TOML problem configuration. Angles are given in degrees and
//! converted once by [`ProblemConfig::resolve`]; everything downstream works
//! in radians.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Result, SlatError};
use crate::operators::Orientation;
use crate::series::FactorialSeries;

pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Icp,
    CauchyConst,
    FreeSurface,
    MixedStraight,
    Extrusion,
    EllipticHole,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Icp => "icp",
            ProblemKind::CauchyConst => "cauchy-const",
            ProblemKind::FreeSurface => "free-surface",
            ProblemKind::MixedStraight => "mixed-straight",
            ProblemKind::Extrusion => "extrusion",
            ProblemKind::EllipticHole => "elliptic-hole",
        }
    }
}

/// Every key is optional; unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemKind>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_beta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha1_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta1_deg: Option<f64>,
    #[serde(rename = "OA", skip_serializing_if = "Option::is_none")]
    pub oa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pressure: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_csv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_json: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_svg: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_profile: Option<String>,
}

impl ProblemConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SlatError::InvalidInput(format!("config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SlatError::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("flat config always serializes")
    }

    /// Checks the keys and converts to the internal units for `kind`.
    pub fn resolve(&self, kind: ProblemKind) -> Result<Resolved> {
        if let Some(p) = self.problem {
            if p != kind {
                return Err(SlatError::InvalidInput(format!(
                    "config is for problem '{}' but '{}' was requested",
                    p.name(),
                    kind.name()
                )));
            }
        }
        let defaults = Defaults::for_kind(kind);
        let order = self.n.unwrap_or(defaults.order);
        if order < 1 {
            return Err(SlatError::InvalidInput("N must be at least 1".into()));
        }
        let grid_alpha = self.grid_alpha.unwrap_or(defaults.grid);
        let grid_beta = self.grid_beta.unwrap_or(defaults.grid);
        if grid_alpha < 2 || grid_beta < 2 {
            return Err(SlatError::InvalidInput(format!(
                "grid must be at least 2x2, got {grid_alpha}x{grid_beta}"
            )));
        }
        let k = self.k.unwrap_or(1.0);
        if !(k > 0.0 && k.is_finite()) {
            return Err(SlatError::InvalidInput(format!("k must be positive, got {k}")));
        }
        let sigma0 = finite("sigma0", self.sigma0.unwrap_or(0.0))?;
        let row = |name: &str, v: &Option<Vec<f64>>| -> Result<Option<FactorialSeries>> {
            match v {
                None => Ok(None),
                Some(v) if v.is_empty() => Err(SlatError::InvalidInput(format!("row '{name}' is empty"))),
                Some(v) if v.iter().any(|x| !x.is_finite()) => {
                    Err(SlatError::InvalidInput(format!("row '{name}' has non-finite entries")))
                }
                Some(v) => Ok(Some(FactorialSeries::new(v.clone()).truncated(order))),
            }
        };
        let required = |name: &str, v: Option<FactorialSeries>| {
            v.ok_or_else(|| SlatError::InvalidInput(format!("problem '{}' needs row '{name}'", kind.name())))
        };
        let rad = |name: &str, v: Option<f64>, default: f64| -> Result<f64> {
            Ok(finite(name, v.unwrap_or(default))?.to_radians())
        };
        let common = Common { order, grid_alpha, grid_beta, k, sigma0 };
        let a = row("a", &self.a)?;
        let b = row("b", &self.b)?;
        let r = row("r", &self.r)?;
        let extent_alpha = rad("alpha1_deg", self.alpha1_deg, defaults.alpha1_deg)?;
        let extent_beta = rad("beta1_deg", self.beta1_deg, defaults.beta1_deg)?;
        let problem = match kind {
            ProblemKind::Icp => Problem::Icp {
                a: required("a", a)?,
                b: required("b", b)?,
                alpha1: extent_alpha,
                beta1: extent_beta,
            },
            ProblemKind::CauchyConst => {
                let tau_n = finite("tau_n", self.tau_n.unwrap_or(0.0))?;
                let eta = match self.eta_deg {
                    Some(d) => finite("eta_deg", d)?.to_radians(),
                    None => crate::bvp::contact_angle(tau_n, k).map_err(|e| SlatError::InvalidInput(e.to_string()))?,
                };
                Problem::Cauchy {
                    r: required("r", r)?,
                    eta,
                    sigma_n: finite("sigma_n", self.sigma_n.unwrap_or(0.0))?,
                    tau_n,
                    orientation: self.orientation.unwrap_or_default(),
                    alpha1: extent_alpha,
                }
            }
            ProblemKind::FreeSurface => Problem::FreeSurface { a: required("a", a)?, alpha1: extent_alpha },
            ProblemKind::MixedStraight => Problem::Mixed {
                a: required("a", a)?,
                eta: rad("eta_deg", self.eta_deg, 45.0)?,
                alpha1: extent_alpha,
            },
            ProblemKind::Extrusion => Problem::Extrusion {
                gamma: rad("gamma_deg", self.gamma_deg, 10.0)?,
                alpha1: extent_alpha,
                beta1: extent_beta,
                oa: positive("OA", self.oa.unwrap_or(2.0))?,
            },
            ProblemKind::EllipticHole => Problem::EllipticHole {
                b_ratio: self.b_ratio.unwrap_or(0.4),
                pressure: finite("pressure", self.pressure.unwrap_or(0.0))?,
            },
        };
        Ok(Resolved { kind, common, problem })
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SlatError::InvalidInput(format!("'{name}' must be finite")))
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(SlatError::InvalidInput(format!("'{name}' must be positive, got {v}")))
    }
}

struct Defaults {
    order: usize,
    grid: usize,
    alpha1_deg: f64,
    beta1_deg: f64,
}

impl Defaults {
    fn for_kind(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::Extrusion => Self { order: 5, grid: 16, alpha1_deg: 30.0, beta1_deg: -20.0 },
            ProblemKind::EllipticHole => Self { order: 15, grid: 16, alpha1_deg: 45.0, beta1_deg: 45.0 },
            _ => Self { order: DEFAULT_ORDER, grid: 16, alpha1_deg: 30.0, beta1_deg: 30.0 },
        }
    }
}

/// Settings shared by every problem, internal units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Common {
    pub order: usize,
    pub grid_alpha: usize,
    pub grid_beta: usize,
    pub k: f64,
    pub sigma0: f64,
}

/// Problem parameters in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    Icp { a: FactorialSeries, b: FactorialSeries, alpha1: f64, beta1: f64 },
    Cauchy { r: FactorialSeries, eta: f64, sigma_n: f64, tau_n: f64, orientation: Orientation, alpha1: f64 },
    FreeSurface { a: FactorialSeries, alpha1: f64 },
    Mixed { a: FactorialSeries, eta: f64, alpha1: f64 },
    Extrusion { gamma: f64, alpha1: f64, beta1: f64, oa: f64 },
    EllipticHole { b_ratio: f64, pressure: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub kind: ProblemKind,
    pub common: Common,
    pub problem: Problem,
}
