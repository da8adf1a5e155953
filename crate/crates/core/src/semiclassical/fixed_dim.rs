//! Per-dimension Slater sums, each written out separately. They are the
//! cross-check for the general-`d` formula, so they deliberately share no
//! coefficient logic with it.

use std::f64::consts::PI;

use crate::common::{Position, SpaceDim};
use crate::error::{Error, Result};
use crate::fields::PDMModel;

use super::{check_beta, LocalFields};

/// `V`-form Slater sum for a fixed dimension `d`, which must match the model.
pub fn slater_sum_fixed_dim(model: &PDMModel, point: &Position, beta: f64, d: SpaceDim) -> Result<f64> {
    if d != model.dim {
        return Err(Error::DimensionMismatch { expected: model.dim.get(), found: d.get() });
    }
    check_beta(beta)?;
    let lf = LocalFields::at(model, point)?;
    Ok(match d {
        SpaceDim::One => slater_1d(&lf, beta),
        SpaceDim::Two => slater_2d(&lf, beta),
        SpaceDim::Three => slater_3d(&lf, beta),
        SpaceDim::Four => slater_4d(&lf, beta),
    })
}

fn slater_1d(lf: &LocalFields, b: f64) -> f64 {
    let (hbar, m0, f) = (lf.hbar, lf.m0, lf.f);
    let df = lf.grad_f[0];
    let du = lf.grad_u[0];
    let d2u = lf.lap_u;
    let prefactor = (m0 / (2.0 * PI * hbar * hbar * f * b)).sqrt() * (-b * lf.v).exp();
    let braces = 0.75 * (df / f).powi(2) * b + (-(df / f) * du - 2.0 * d2u) * b.powi(2) + du.powi(2) * b.powi(3);
    prefactor * (1.0 + hbar * hbar * f / (24.0 * m0) * braces)
}

fn slater_2d(lf: &LocalFields, b: f64) -> f64 {
    let (hbar, m0, f) = (lf.hbar, lf.m0, lf.f);
    let grad_f_over_f_sq: f64 = lf.grad_f.iter().map(|g| (g / f).powi(2)).sum();
    let grad_u_sq: f64 = lf.grad_u.iter().map(|g| g * g).sum();
    let prefactor = m0 / (2.0 * PI * hbar * hbar * f * b) * (-b * lf.v).exp();
    let braces = (grad_f_over_f_sq - lf.lap_f / f) * b - 2.0 * lf.lap_u * b.powi(2) + grad_u_sq * b.powi(3);
    prefactor * (1.0 + hbar * hbar * f / (24.0 * m0) * braces)
}

fn slater_3d(lf: &LocalFields, b: f64) -> f64 {
    let (hbar, m0, f) = (lf.hbar, lf.m0, lf.f);
    let grad_f_over_f_sq: f64 = lf.grad_f.iter().map(|g| (g / f).powi(2)).sum();
    let grad_u_sq: f64 = lf.grad_u.iter().map(|g| g * g).sum();
    let cross: f64 = lf.grad_f.iter().zip(&lf.grad_u).map(|(a, c)| a * c).sum::<f64>() / f;
    let prefactor = (m0 / (2.0 * PI * hbar * hbar * f * b)).powf(1.5) * (-b * lf.v).exp();
    let braces = (1.75 * grad_f_over_f_sq - 2.0 * lf.lap_f / f) * b
        + (cross - 2.0 * lf.lap_u) * b.powi(2)
        + grad_u_sq * b.powi(3);
    prefactor * (1.0 + hbar * hbar * f / (24.0 * m0) * braces)
}

fn slater_4d(lf: &LocalFields, b: f64) -> f64 {
    let (hbar, m0, f) = (lf.hbar, lf.m0, lf.f);
    let grad_f_over_f_sq: f64 = lf.grad_f.iter().map(|g| (g / f).powi(2)).sum();
    let grad_u_sq: f64 = lf.grad_u.iter().map(|g| g * g).sum();
    let cross: f64 = lf.grad_f.iter().zip(&lf.grad_u).map(|(a, c)| a * c).sum::<f64>() / f;
    let prefactor = (m0 / (2.0 * PI * hbar * hbar * f * b)).powi(2) * (-b * lf.v).exp();
    let braces = 3.0 * (grad_f_over_f_sq - lf.lap_f / f) * b
        + (2.0 * cross - 2.0 * lf.lap_u) * b.powi(2)
        + grad_u_sq * b.powi(3);
    // The ℏ² scale carries f here as in every other dimension; the density
    // expansion's Laplace transform confirms it.
    prefactor * (1.0 + hbar * hbar * f / (24.0 * m0) * braces)
}
