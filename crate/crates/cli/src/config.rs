//! JSON run configuration.
//!
//! ```json
//! {
//!   "model": { "builtin": "pct", "params": { "gamma": 0.6, "omega": 1.0 } },
//!   "constants": { "hbar": 1.0, "m0": 1.0 },
//!   "run": { "d": 1, "beta": [0.5, 1.0], "grid": { "min": -5, "max": 5, "n": 201 }, "lambda": 5.0 },
//!   "compare": { "oracle": "pct-exact", "tolerance": 1e-2 }
//! }
//! ```
//!
//! Instead of `builtin`, a model may give expressions `f` and `U` sharing the
//! `params` table. Every section except `model` is optional.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use pdm_slater::oracles::Grid1D;
use pdm_slater::{Constants, FieldSpec, PDMModel, SpaceDim};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: RawModel,
    #[serde(default)]
    constants: RawConstants,
    #[serde(default)]
    run: RawRun,
    compare: Option<RawCompare>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    builtin: Option<String>,
    f: Option<String>,
    #[serde(rename = "U", alias = "u")]
    u: Option<String>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstants {
    #[serde(default = "one")]
    hbar: f64,
    #[serde(default = "one")]
    m0: f64,
}

impl Default for RawConstants {
    fn default() -> Self {
        Self { hbar: 1.0, m0: 1.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum BetaSpec {
    One(f64),
    Sweep(Vec<f64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    #[serde(default = "default_dim")]
    d: usize,
    #[serde(default = "default_beta")]
    beta: BetaSpec,
    #[serde(default)]
    grid: RawGrid,
    lambda: Option<f64>,
}

impl Default for RawRun {
    fn default() -> Self {
        Self { d: 1, beta: BetaSpec::One(1.0), grid: RawGrid::default(), lambda: None }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    min: f64,
    max: f64,
    n: usize,
}

impl Default for RawGrid {
    fn default() -> Self {
        Self { min: -5.0, max: 5.0, n: 201 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCompare {
    oracle: String,
    tolerance: Option<f64>,
    grid: Option<RawGrid>,
}

fn one() -> f64 {
    1.0
}

fn default_dim() -> usize {
    1
}

fn default_beta() -> BetaSpec {
    BetaSpec::One(1.0)
}

/// How the model was specified; the oracles need to know.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Pct { gamma: f64, omega: f64 },
    Harmonic { omega: f64 },
    Expression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    PctExact,
    GridSpectral,
}

impl Oracle {
    pub fn name(self) -> &'static str {
        match self {
            Oracle::PctExact => "pct-exact",
            Oracle::GridSpectral => "grid-spectral",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompareConfig {
    pub oracle: Oracle,
    pub tolerance: Option<f64>,
    /// Discretization used by the grid-spectral oracle.
    pub spectral_grid: Grid1D,
}

/// A validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kind: ModelKind,
    pub model: PDMModel,
    pub betas: Vec<f64>,
    /// Sample points, along the first coordinate axis when `d > 1`.
    pub grid: Grid1D,
    pub lambda: Option<f64>,
    pub compare: Option<CompareConfig>,
}

impl RunConfig {
    pub fn dim(&self) -> SpaceDim {
        self.model.dim
    }

    pub fn constants(&self) -> Constants {
        self.model.constants
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text).map_err(|e| match e {
        CliError::Config(message) => CliError::ConfigFile { path: path.to_path_buf(), message },
        other => other,
    })
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let constants = Constants::new(raw.constants.hbar, raw.constants.m0)?;
    let dim = SpaceDim::new(raw.run.d)?;
    let (kind, model) = build_model(&raw.model, dim, constants)?;

    let betas = match raw.run.beta {
        BetaSpec::One(b) => vec![b],
        BetaSpec::Sweep(v) => v,
    };
    if betas.is_empty() {
        return Err(CliError::Config("run.beta: sweep list is empty".into()));
    }
    if let Some(&b) = betas.iter().find(|b| !(**b > 0.0 && b.is_finite())) {
        return Err(CliError::Model(pdm_slater::Error::InvalidBeta(b)));
    }
    let grid = to_grid(raw.run.grid)?;
    if let Some(l) = raw.run.lambda {
        if !l.is_finite() {
            return Err(CliError::Config(format!("run.lambda must be finite, got {l}")));
        }
    }

    let compare = raw
        .compare
        .map(|c| -> Result<CompareConfig> {
            let oracle = match c.oracle.as_str() {
                "pct-exact" => Oracle::PctExact,
                "grid-spectral" => Oracle::GridSpectral,
                other => {
                    return Err(CliError::Config(format!(
                        "compare.oracle: unknown oracle `{other}` (expected \"pct-exact\" or \"grid-spectral\")"
                    )))
                }
            };
            if let Some(t) = c.tolerance {
                if !(t >= 0.0) {
                    return Err(CliError::Config(format!("compare.tolerance must be non-negative, got {t}")));
                }
            }
            let spectral_grid = to_grid(c.grid.unwrap_or(RawGrid { min: -20.0, max: 20.0, n: 4000 }))?;
            Ok(CompareConfig { oracle, tolerance: c.tolerance, spectral_grid })
        })
        .transpose()?;

    Ok(RunConfig { kind, model, betas, grid, lambda: raw.run.lambda, compare })
}

fn to_grid(g: RawGrid) -> Result<Grid1D> {
    Ok(Grid1D::new(g.min, g.max, g.n)?)
}

fn build_model(raw: &RawModel, dim: SpaceDim, constants: Constants) -> Result<(ModelKind, PDMModel)> {
    let param = |name: &str| raw.params.get(name).copied();
    let omega = param("omega").unwrap_or(1.0);
    match (&raw.builtin, &raw.f, &raw.u) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(CliError::Config("model: give either `builtin` or `f`/`U`, not both".into()))
        }
        (Some(name), None, None) => {
            let allowed: &[&str] = match name.as_str() {
                "pct" => &["gamma", "omega"],
                "harmonic" => &["omega"],
                other => {
                    return Err(CliError::Config(format!(
                        "model.builtin: unknown builtin `{other}` (expected \"pct\" or \"harmonic\")"
                    )))
                }
            };
            if let Some(extra) = raw.params.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(CliError::Config(format!("model.params: `{extra}` is not a parameter of `{name}`")));
            }
            if name == "pct" {
                let gamma = param("gamma")
                    .ok_or_else(|| CliError::Config("model.params: builtin `pct` needs `gamma`".into()))?;
                if dim != SpaceDim::One {
                    return Err(CliError::Model(pdm_slater::Error::DimensionMismatch {
                        expected: 1,
                        found: dim.get(),
                    }));
                }
                Ok((ModelKind::Pct { gamma, omega }, PDMModel::pct(gamma, omega, constants)?))
            } else {
                Ok((ModelKind::Harmonic { omega }, PDMModel::harmonic(omega, dim, constants)?))
            }
        }
        (None, f, u) => {
            let f = FieldSpec::expression(f.as_deref().unwrap_or("1"), raw.params.clone())?;
            let u = FieldSpec::expression(u.as_deref().unwrap_or("0"), raw.params.clone())?;
            Ok((ModelKind::Expression, PDMModel::new(f, u, dim, constants)?))
        }
    }
}
