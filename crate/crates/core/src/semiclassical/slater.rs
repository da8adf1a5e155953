//! Slater sum in closed form, written for general `d`.

use crate::common::{Position, SpaceDim};
use crate::error::{Error, Result};
use crate::fields::PDMModel;

use super::{check_beta, dim_power, LocalFields, SlaterResult};

/// Dimension-dependent coefficients of the ℏ² braces.
struct BraceCoefficients {
    /// multiplies `(∇f/f)² β`: `((d−1)² + 3)/4`
    grad_f_sq: f64,
    /// multiplies `−(∇²f/f) β`
    lap_f: f64,
    /// multiplies `(∇f·∇U/f) β²`: `d − 2`
    cross: f64,
}

impl BraceCoefficients {
    /// `U` form: the `∇²f` coefficient is `d + 2`.
    fn u_form(dim: SpaceDim) -> Self {
        let d = dim.as_f64();
        Self { grad_f_sq: ((d - 1.0) * (d - 1.0) + 3.0) / 4.0, lap_f: d + 2.0, cross: d - 2.0 }
    }

    /// `V` form: the `∇²f` coefficient is `d − 1`; the other three units
    /// of `d + 2` sit in `exp(−βV)`.
    fn v_form(dim: SpaceDim) -> Self {
        let d = dim.as_f64();
        Self { grad_f_sq: ((d - 1.0) * (d - 1.0) + 3.0) / 4.0, lap_f: d - 1.0, cross: d - 2.0 }
    }

    fn braces(&self, lf: &LocalFields, beta: f64) -> f64 {
        let f = lf.f;
        (self.grad_f_sq * (lf.grad_f_sq / (f * f)) - self.lap_f * (lf.lap_f / f)) * beta
            + (self.cross * (lf.f_dot_u / f) - 2.0 * lf.lap_u) * (beta * beta)
            + lf.grad_u_sq * (beta * beta * beta)
    }
}

/// Slater sum `C(r;β)` to order ℏ², expressed through `U`:
///
/// ```text
/// C = (m₀/2πℏ²fβ)^{d/2} e^{−βU} [1 + (ℏ²f/24m₀){ [((d−1)²+3)/4 (∇f/f)² − (d+2)∇²f/f] β
///                                              + [(d−2) ∇f·∇U/f − 2∇²U] β²
///                                              + (∇U)² β³ }]
/// ```
pub fn slater_sum(model: &PDMModel, point: &Position, beta: f64) -> Result<SlaterResult> {
    check_beta(beta)?;
    let lf = LocalFields::at(model, point)?;
    let leading = dim_power(lf.thermal_base(beta), lf.dim) * (-beta * lf.u).exp();
    let braces = BraceCoefficients::u_form(lf.dim).braces(&lf, beta);
    Ok(SlaterResult::new(leading, leading * lf.correction_scale() * braces))
}

/// Slater sum in the `V` form: `V = U + (ℏ²/8m₀)∇²f` in the prefactor
/// exponent, `∇U` and `∇²U` in the braces. Agrees with [`slater_sum`] up to
/// O(ℏ⁴) relative terms.
pub fn slater_sum_v_form(model: &PDMModel, point: &Position, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let lf = LocalFields::at(model, point)?;
    let leading = dim_power(lf.thermal_base(beta), lf.dim) * (-beta * lf.v).exp();
    let braces = BraceCoefficients::v_form(lf.dim).braces(&lf, beta);
    Ok(leading * (1.0 + lf.correction_scale() * braces))
}

/// The ℏ² correction of the one-dimensional Slater sum,
///
/// ```text
/// δC = (ℏ²f/24m₀)(m₀/2πℏ²fβ)^{1/2} e^{−βU} { [¾(f′/f)² − 3f″/f]β + [−f′U′/f − 2U″]β² + U′²β³ }
/// ```
pub fn delta_correction_1d(model: &PDMModel, x: &Position, beta: f64) -> Result<f64> {
    if model.dim != SpaceDim::One {
        return Err(Error::DimensionMismatch { expected: 1, found: model.dim.get() });
    }
    check_beta(beta)?;
    let fj = model.mass_jet(x)?;
    let uj = model.potential_jet(x)?;
    let c = model.constants;
    let (f, f1, f2) = (fj.value, fj.gradient[0], fj.laplacian);
    let (u, u1, u2) = (uj.value, uj.gradient[0], uj.laplacian);

    let prefactor = (c.m0 / (2.0 * std::f64::consts::PI * c.hbar * c.hbar * f * beta)).sqrt() * (-beta * u).exp();
    let scale = c.hbar * c.hbar * f / (24.0 * c.m0);
    let braces = (0.75 * (f1 * f1 / (f * f)) - 3.0 * (f2 / f)) * beta
        + (-(f1 * u1 / f) - 2.0 * u2) * (beta * beta)
        + u1 * u1 * (beta * beta * beta);
    Ok(prefactor * scale * braces)
}

/// The ℏ² braces of the `U`-form Slater sum, term by term, each already
/// multiplied by its power of β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionBreakdown {
    /// `((d−1)²+3)/4 · (∇f/f)² β`
    pub mass_gradient: f64,
    /// `−(d+2) · ∇²f/f · β`
    pub mass_laplacian: f64,
    /// `(d−2) · ∇f·∇U/f · β²`
    pub mass_potential_cross: f64,
    /// `−2∇²U β²`
    pub potential_laplacian: f64,
    /// `(∇U)² β³`
    pub potential_gradient: f64,
    /// `V − U = (ℏ²/8m₀)∇²f`
    pub potential_shift: f64,
    /// `ℏ²f/24m₀`
    pub scale: f64,
}

impl CorrectionBreakdown {
    pub fn braces(&self) -> f64 {
        self.mass_gradient
            + self.mass_laplacian
            + self.mass_potential_cross
            + self.potential_laplacian
            + self.potential_gradient
    }

    /// The four contributions that exist only because the mass varies.
    pub fn mass_terms(&self) -> [f64; 4] {
        [self.mass_gradient, self.mass_laplacian, self.mass_potential_cross, self.potential_shift]
    }
}

pub fn correction_breakdown(model: &PDMModel, point: &Position, beta: f64) -> Result<CorrectionBreakdown> {
    check_beta(beta)?;
    let lf = LocalFields::at(model, point)?;
    let k = BraceCoefficients::u_form(lf.dim);
    let f = lf.f;
    Ok(CorrectionBreakdown {
        mass_gradient: k.grad_f_sq * (lf.grad_f_sq / (f * f)) * beta,
        mass_laplacian: -k.lap_f * (lf.lap_f / f) * beta,
        mass_potential_cross: k.cross * (lf.f_dot_u / f) * beta * beta,
        potential_laplacian: -2.0 * lf.lap_u * beta * beta,
        potential_gradient: lf.grad_u_sq * beta * beta * beta,
        potential_shift: lf.v - lf.u,
        scale: lf.correction_scale(),
    })
}
