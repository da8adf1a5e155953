//! Batch evaluation over the configured grid.

use pdm_slater::oracles::{discretize_hamiltonian, eigendecompose, pct_exact_slater, Grid1D};
use pdm_slater::semiclassical::{density_semiclassical, effective_potential, slater_sum};
use pdm_slater::{Position, SpaceDim};
use rayon::prelude::*;

use crate::config::{ModelKind, Oracle, RunConfig};
use crate::error::{CliError, Result};
use crate::table::Table;

/// One evaluation point of a semiclassical run, optionally with a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub beta: f64,
    pub x: f64,
    pub c_leading: f64,
    pub delta_c: f64,
    pub c_semiclassical: f64,
    pub c_exact: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
}

impl ComparisonRow {
    fn with_exact(mut self, exact: f64) -> Self {
        let abs = (self.c_semiclassical - exact).abs();
        self.c_exact = Some(exact);
        self.abs_err = Some(abs);
        self.rel_err = Some(abs / exact.abs());
        self
    }
}

pub const COMPARISON_HEADER: [&str; 8] =
    ["beta", "x", "C_leading", "delta_C", "C_semiclassical", "C_exact", "abs_err", "rel_err"];

pub fn comparison_table(rows: &[ComparisonRow]) -> Table {
    let mut t = Table::new(COMPARISON_HEADER);
    for r in rows {
        t.push(vec![
            Some(r.beta),
            Some(r.x),
            Some(r.c_leading),
            Some(r.delta_c),
            Some(r.c_semiclassical),
            r.c_exact,
            r.abs_err,
            r.rel_err,
        ]);
    }
    t
}

/// Worst-case errors of a comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    /// Location of the largest relative error.
    pub argmax_x: f64,
    pub argmax_beta: f64,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub oracle: Oracle,
    pub rows: Vec<ComparisonRow>,
    pub summary: Summary,
    pub tolerance: Option<f64>,
}

impl CompareReport {
    pub fn within_tolerance(&self) -> bool {
        self.tolerance.is_none_or(|t| self.summary.max_rel_err <= t)
    }
}

fn position(x: f64, dim: SpaceDim) -> Position {
    Position::on_axis(x, dim)
}

fn semiclassical_row(cfg: &RunConfig, beta: f64, x: f64) -> Result<ComparisonRow> {
    let r = slater_sum(&cfg.model, &position(x, cfg.dim()), beta).map_err(CliError::at(x))?;
    Ok(ComparisonRow {
        beta,
        x,
        c_leading: r.leading,
        delta_c: r.correction,
        c_semiclassical: r.total,
        c_exact: None,
        abs_err: None,
        rel_err: None,
    })
}

fn sweep<T: Send>(cfg: &RunConfig, xs: &[f64], eval: impl Fn(f64, f64) -> Result<T> + Sync) -> Result<Vec<T>> {
    let jobs: Vec<(f64, f64)> = cfg.betas.iter().flat_map(|&b| xs.iter().map(move |&x| (b, x))).collect();
    jobs.into_par_iter().map(|(b, x)| eval(b, x)).collect()
}

/// Semiclassical Slater sum at every grid point and β.
pub fn run_semiclassical(cfg: &RunConfig) -> Result<Vec<ComparisonRow>> {
    sweep(cfg, &cfg.grid.nodes(), |b, x| semiclassical_row(cfg, b, x))
}

pub fn semiclassical_table(rows: &[ComparisonRow]) -> Table {
    let mut t = Table::new(["beta", "x", "C_leading", "delta_C", "C_semiclassical"]);
    for r in rows {
        t.push(vec![Some(r.beta), Some(r.x), Some(r.c_leading), Some(r.delta_c), Some(r.c_semiclassical)]);
    }
    t
}

/// Smooth density at `run.lambda`. Points with `λ < V` are classically
/// forbidden and get density 0; `λ = V` exactly is an error.
pub fn run_density(cfg: &RunConfig) -> Result<Table> {
    let lambda = cfg.lambda.ok_or_else(|| CliError::Config("density needs run.lambda".into()))?;
    let rows: Vec<Vec<Option<f64>>> = cfg
        .grid
        .nodes()
        .into_par_iter()
        .map(|x| {
            let p = position(x, cfg.dim());
            let v = effective_potential(&cfg.model, &p).map_err(CliError::at(x))?.value;
            let rho = if lambda < v {
                0.0
            } else {
                density_semiclassical(&cfg.model, &p, lambda).map_err(CliError::at(x))?
            };
            Ok(vec![Some(lambda), Some(x), Some(v), Some(rho)])
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(["lambda", "x", "V", "rho"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn pct_params(cfg: &RunConfig) -> Result<(f64, f64)> {
    match cfg.kind {
        ModelKind::Pct { gamma, omega } => Ok((gamma, omega)),
        _ => Err(CliError::Config("the pct-exact oracle needs model.builtin = \"pct\"".into())),
    }
}

/// Closed-form Slater sum of the transformed-oscillator model.
pub fn run_exact_pct(cfg: &RunConfig) -> Result<Table> {
    let (gamma, omega) = pct_params(cfg)?;
    let c = cfg.constants();
    let mut t = Table::new(["beta", "x", "C_exact"]);
    for &b in &cfg.betas {
        for x in cfg.grid.nodes() {
            t.push(vec![Some(b), Some(x), Some(pct_exact_slater(x, b, gamma, omega, &c))]);
        }
    }
    Ok(t)
}

/// Spectral Slater sums at the spectral-grid nodes lying inside the run range,
/// one vector per β.
fn spectral_values(cfg: &RunConfig, grid: &Grid1D) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if cfg.dim() != SpaceDim::One {
        return Err(CliError::Model(pdm_slater::Error::DimensionMismatch { expected: 1, found: cfg.dim().get() }));
    }
    let spectrum = eigendecompose(&discretize_hamiltonian(&cfg.model, grid)?)?;
    let (lo, hi) = (cfg.grid.x_min, cfg.grid.x_max);
    let keep: Vec<usize> = (0..grid.n).filter(|&i| (lo..=hi).contains(&grid.node(i))).collect();
    if keep.is_empty() {
        return Err(CliError::Config("no spectral grid node lies inside run.grid".into()));
    }
    let xs = keep.iter().map(|&i| grid.node(i)).collect();
    let values = cfg
        .betas
        .iter()
        .map(|&b| {
            let c = spectrum.slater_diagonal(b);
            keep.iter().map(|&i| c[i]).collect()
        })
        .collect();
    Ok((xs, values))
}

fn spectral_grid(cfg: &RunConfig) -> Grid1D {
    cfg.compare.as_ref().map(|c| c.spectral_grid).unwrap_or(Grid1D { x_min: -20.0, x_max: 20.0, n: 4000 })
}

/// Slater sum from the discretized spectrum.
pub fn run_exact_grid(cfg: &RunConfig) -> Result<Table> {
    let (xs, values) = spectral_values(cfg, &spectral_grid(cfg))?;
    let mut t = Table::new(["beta", "x", "C_exact"]);
    for (b, col) in cfg.betas.iter().zip(&values) {
        for (x, c) in xs.iter().zip(col) {
            t.push(vec![Some(*b), Some(*x), Some(*c)]);
        }
    }
    Ok(t)
}

/// Semiclassical against the configured oracle. `tolerance` overrides the
/// configured one.
pub fn run_compare(cfg: &RunConfig, tolerance: Option<f64>) -> Result<CompareReport> {
    let compare = cfg.compare.as_ref().ok_or_else(|| CliError::Config("compare needs a `compare` section".into()))?;
    let rows = match compare.oracle {
        Oracle::PctExact => {
            let (gamma, omega) = pct_params(cfg)?;
            let c = cfg.constants();
            sweep(cfg, &cfg.grid.nodes(), |b, x| {
                Ok(semiclassical_row(cfg, b, x)?.with_exact(pct_exact_slater(x, b, gamma, omega, &c)))
            })?
        }
        Oracle::GridSpectral => {
            let (xs, values) = spectral_values(cfg, &compare.spectral_grid)?;
            let semi = sweep(cfg, &xs, |b, x| semiclassical_row(cfg, b, x))?;
            semi.into_iter().zip(values.iter().flatten()).map(|(r, &e)| r.with_exact(e)).collect()
        }
    };
    let mut summary = Summary { max_abs_err: 0.0, max_rel_err: 0.0, argmax_x: f64::NAN, argmax_beta: f64::NAN };
    for r in &rows {
        let (a, e) = (r.abs_err.unwrap_or(0.0), r.rel_err.unwrap_or(0.0));
        summary.max_abs_err = summary.max_abs_err.max(a);
        if e > summary.max_rel_err || summary.argmax_x.is_nan() {
            summary.max_rel_err = e;
            summary.argmax_x = r.x;
            summary.argmax_beta = r.beta;
        }
    }
    Ok(CompareReport { oracle: compare.oracle, rows, summary, tolerance: tolerance.or(compare.tolerance) })
}
