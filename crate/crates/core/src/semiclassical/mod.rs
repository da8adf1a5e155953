//! The ℏ² gradient expansion of the particle density and of the Slater sum.
//!
//! The density at Fermi energy `λ` is expanded as a short list of
//! [`ExpansionTerm`]s `c(r)·∂ᵏ_λ[(λ−V)^ν θ(λ−V)]`, where
//! `V = U + (ℏ²/8m₀)∇²f`. The Slater sum is the Laplace transform
//! `C(r;β) = β∫₀^∞ e^{−βλ} ρ(r;λ) dλ`, which maps each term in closed form:
//!
//! ```text
//! ∫₀^∞ e^{−βλ} ∂ᵏ_λ[(λ−V)^ν θ(λ−V)] dλ = βᵏ Γ(ν+1) β^{−ν−1} e^{−βV}
//! ```
//!
//! Inside ℏ²-order terms the gradients of `V` are replaced by those of `U`
//! (they differ at O(ℏ²)), so only second derivatives of `f` and `U` are ever
//! needed. `V` itself is kept exact wherever it appears in a prefactor or
//! exponent.

mod density;
mod fixed_dim;
mod slater;

pub use density::{density_expansion_terms, density_semiclassical, laplace_of_term, slater_from_density};
pub use fixed_dim::slater_sum_fixed_dim;
pub use slater::{correction_breakdown, delta_correction_1d, slater_sum, slater_sum_v_form, CorrectionBreakdown};

use std::f64::consts::PI;

use crate::common::{dot, HalfInt, Position, SpaceDim};
use crate::error::{Error, Result};
use crate::fields::PDMModel;

/// Slater sum to order ℏ², split into its Thomas-Fermi part and correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlaterResult {
    pub leading: f64,
    pub correction: f64,
    pub total: f64,
}

impl SlaterResult {
    fn new(leading: f64, correction: f64) -> Self {
        Self { leading, correction, total: leading + correction }
    }
}

/// One term `coeff·∂ᵏ_λ[(λ−V)^ν θ(λ−V)]` of a density expansion, with the
/// coefficient already evaluated at the query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub coeff: f64,
    pub nu: HalfInt,
    pub deriv_order: u8,
}

impl ExpansionTerm {
    pub fn new(coeff: f64, nu: HalfInt, deriv_order: u8) -> Self {
        Self { coeff, nu, deriv_order }
    }

    /// Pointwise value for `λ > V`, where θ = 1 and the distributional parts
    /// vanish: `coeff·ν(ν−1)…(ν−k+1)·(λ−V)^{ν−k}`.
    pub fn pointwise(&self, v: f64, lambda: f64) -> Result<f64> {
        if !(lambda > v) {
            return Err(Error::TurningPoint { lambda, v });
        }
        let nu = self.nu.value();
        let falling: f64 = (0..self.deriv_order).map(|j| nu - f64::from(j)).product();
        if falling == 0.0 {
            return Ok(0.0);
        }
        let power = self.nu.add_int(-i32::from(self.deriv_order));
        Ok(self.coeff * falling * half_power(lambda - v, power))
    }
}

/// `V = U + (ℏ²/8m₀)∇²f` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotentialV {
    pub value: f64,
}

pub fn effective_potential(model: &PDMModel, point: &Position) -> Result<EffectivePotentialV> {
    Ok(EffectivePotentialV { value: LocalFields::at(model, point)?.v })
}

/// `x^{n/2}` for `x > 0`.
pub(crate) fn half_power(x: f64, p: HalfInt) -> f64 {
    let twice = p.twice();
    let whole = x.powi(twice.div_euclid(2));
    if twice.rem_euclid(2) == 1 {
        whole * x.sqrt()
    } else {
        whole
    }
}

/// `base^{d/2}`.
pub(crate) fn dim_power(base: f64, dim: SpaceDim) -> f64 {
    match dim {
        SpaceDim::One => base.sqrt(),
        SpaceDim::Two => base,
        SpaceDim::Three => base * base.sqrt(),
        SpaceDim::Four => base * base,
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidBeta(beta));
    }
    Ok(())
}

/// Everything the expansions need from `f` and `U` at one point.
#[derive(Debug, Clone)]
pub(crate) struct LocalFields {
    pub dim: SpaceDim,
    pub hbar: f64,
    pub m0: f64,
    pub f: f64,
    pub grad_f: Vec<f64>,
    pub lap_f: f64,
    pub u: f64,
    pub grad_u: Vec<f64>,
    pub lap_u: f64,
    /// `|∇f|²`
    pub grad_f_sq: f64,
    /// `|∇U|²`
    pub grad_u_sq: f64,
    /// `∇f·∇U`
    pub f_dot_u: f64,
    /// `U + (ℏ²/8m₀)∇²f`
    pub v: f64,
}

impl LocalFields {
    pub fn at(model: &PDMModel, point: &Position) -> Result<Self> {
        let fj = model.mass_jet(point)?;
        let uj = model.potential_jet(point)?;
        let c = model.constants;
        let grad_f_sq = dot(&fj.gradient, &fj.gradient)?;
        let grad_u_sq = dot(&uj.gradient, &uj.gradient)?;
        let f_dot_u = dot(&fj.gradient, &uj.gradient)?;
        let v = uj.value + c.hbar2_over_m0() / 8.0 * fj.laplacian;
        Ok(Self {
            dim: model.dim,
            hbar: c.hbar,
            m0: c.m0,
            f: fj.value,
            lap_f: fj.laplacian,
            grad_f: fj.gradient,
            u: uj.value,
            lap_u: uj.laplacian,
            grad_u: uj.gradient,
            grad_f_sq,
            grad_u_sq,
            f_dot_u,
            v,
        })
    }

    /// `m₀/(2πℏ²fβ)`
    pub fn thermal_base(&self, beta: f64) -> f64 {
        self.m0 / (2.0 * PI * self.hbar * self.hbar * self.f * beta)
    }

    /// `ℏ²f/(24m₀)`
    pub fn correction_scale(&self) -> f64 {
        self.hbar * self.hbar * self.f / (24.0 * self.m0)
    }
}
