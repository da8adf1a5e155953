//! Data behind the standard plots of the transformed-oscillator model:
//! mass ratio, semiclassical Slater sum, its ℏ² correction and the exact
//! Slater sum, each over x ∈ [−5, 5] for γ = 0.6, 0.8, 1.0 at β = ω = 1.

use std::fs;
use std::path::{Path, PathBuf};

use pdm_slater::oracles::{pct_exact_slater, Grid1D};
use pdm_slater::semiclassical::slater_sum;
use pdm_slater::{Constants, PDMModel, Position};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::table::Table;

pub const GAMMAS: [f64; 3] = [0.6, 0.8, 1.0];
pub const FILES: [&str; 4] =
    ["mass_ratio.csv", "slater_semiclassical.csv", "slater_correction.csv", "slater_exact.csv"];

const BETA: f64 = 1.0;
const OMEGA: f64 = 1.0;

pub fn figure_tables(constants: Constants) -> Result<Vec<(&'static str, Table)>> {
    let xs = Grid1D::new(-5.0, 5.0, 201)?.nodes();
    let header: Vec<String> =
        std::iter::once("x".to_string()).chain(GAMMAS.iter().map(|g| format!("gamma_{g:.1}"))).collect();
    let models = GAMMAS.iter().map(|&g| PDMModel::pct(g, OMEGA, constants)).collect::<pdm_slater::Result<Vec<_>>>()?;

    // Per x: [f, C_sc, δC, C_exact] for every γ.
    let samples: Vec<Vec<[f64; 4]>> = xs
        .par_iter()
        .map(|&x| {
            let p = Position::x(x);
            models
                .iter()
                .zip(GAMMAS)
                .map(|(m, g)| {
                    let r = slater_sum(m, &p, BETA).map_err(CliError::at(x))?;
                    let f = m.mass_ratio(&p).map_err(CliError::at(x))?;
                    Ok([f, r.total, r.correction, pct_exact_slater(x, BETA, g, OMEGA, &constants)])
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    Ok(FILES
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let mut t = Table::new(header.clone());
            for (x, row) in xs.iter().zip(&samples) {
                t.push(std::iter::once(Some(*x)).chain(row.iter().map(|s| Some(s[k]))).collect());
            }
            (name, t)
        })
        .collect())
}

/// Writes the four tables into `dir`, creating it if needed.
pub fn write_figures(dir: &Path, constants: Constants) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    figure_tables(constants)?
        .into_iter()
        .map(|(name, t)| {
            let path = dir.join(name);
            t.write_to(Some(&path))?;
            Ok(path)
        })
        .collect()
}
