//! Finite-difference discretization of the one-dimensional PDM Hamiltonian.

use crate::common::{Position, SpaceDim};
use crate::error::{Error, Result};
use crate::fields::PDMModel;

use super::eigen::eigendecompose;

/// Uniform grid of `n` nodes `x_min, x_min + h, …, x_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::Grid(format!("bounds must be finite, got [{x_min}, {x_max}]")));
        }
        if !(x_max > x_min) {
            return Err(Error::Grid(format!("x_max must exceed x_min, got [{x_min}, {x_max}]")));
        }
        if n < 3 {
            return Err(Error::Grid(format!("need at least 3 nodes, got {n}")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}

/// Symmetric tridiagonal matrix. `spacing` is the quadrature weight used to
/// normalize eigenvectors (`Σ|φᵢ|²·spacing = 1`); use 1 for a plain matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub spacing: f64,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        Self::with_spacing(diag, offdiag, 1.0)
    }

    pub fn with_spacing(diag: Vec<f64>, offdiag: Vec<f64>, spacing: f64) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::Grid(format!(
                "tridiagonal shape mismatch: {} diagonal and {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::Grid(format!("spacing must be positive, got {spacing}")));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::Grid("matrix has non-finite entries".into()));
        }
        Ok(Self { diag, offdiag, spacing })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Discretize `−(ℏ²/2m₀) d/dx f d/dx + U` with `f` sampled at cell midpoints:
///
/// ```text
/// (Hψ)ᵢ = −(ℏ²/2m₀h²)[f_{i+½}(ψ_{i+1} − ψᵢ) − f_{i−½}(ψᵢ − ψ_{i−1})] + Uᵢψᵢ
/// ```
///
/// Every node is an unknown; `ψ` vanishes just outside the grid.
pub fn discretize_hamiltonian(model: &PDMModel, grid: &Grid1D) -> Result<SymTridiag> {
    if model.dim != SpaceDim::One {
        return Err(Error::DimensionMismatch { expected: 1, found: model.dim.get() });
    }
    let h = grid.spacing();
    let t = model.constants.hbar2_over_m0() / (2.0 * h * h);
    let f_mid = (0..=grid.n)
        .map(|i| model.mass_ratio(&Position::x(grid.x_min + (i as f64 - 0.5) * h)))
        .collect::<Result<Vec<_>>>()?;
    let diag = (0..grid.n)
        .map(|i| Ok(t * (f_mid[i] + f_mid[i + 1]) + model.potential(&Position::x(grid.node(i)))?))
        .collect::<Result<Vec<_>>>()?;
    let offdiag = (1..grid.n).map(|i| -t * f_mid[i]).collect();
    SymTridiag::with_spacing(diag, offdiag, h)
}

/// `C(xᵢ;β) = Σₙ |φₙ(xᵢ)|² e^{−βεₙ}` at every grid node.
pub fn slater_exact_numeric(model: &PDMModel, grid: &Grid1D, beta: f64) -> Result<Vec<f64>> {
    crate::semiclassical::check_beta(beta)?;
    let spectrum = eigendecompose(&discretize_hamiltonian(model, grid)?)?;
    Ok(spectrum.slater_diagonal(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::common::Constants;
    use crate::fields::FieldSpec;
    use std::collections::BTreeMap;

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(0.0, 1.0, 2).is_err());
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(0.0, f64::INFINITY, 10).is_err());
        let g = Grid1D::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.nodes(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn matrix_validation() {
        assert!(SymTridiag::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiag::new(vec![], vec![]).is_err());
        assert!(SymTridiag::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
        assert!(SymTridiag::with_spacing(vec![1.0], vec![], 0.0).is_err());
    }

    #[test]
    fn free_particle_stencil() {
        let c = Constants::new(1.0, 2.0).unwrap();
        let model = PDMModel::new(FieldSpec::constant(1.0), FieldSpec::constant(0.25), SpaceDim::One, c).unwrap();
        let grid = Grid1D::new(0.0, 1.0, 11).unwrap();
        let t = discretize_hamiltonian(&model, &grid).unwrap();
        let a = 1.0 / (2.0 * 2.0 * 0.01);
        for &d in &t.diag {
            assert!((d - (2.0 * a + 0.25)).abs() < 1e-10);
        }
        for &o in &t.offdiag {
            assert!((o + a).abs() < 1e-10);
        }
        assert_eq!(t.spacing, grid.spacing());
    }

    #[test]
    fn variable_mass_uses_midpoints() {
        let f = FieldSpec::expression("1 + x^2", BTreeMap::new()).unwrap();
        let model = PDMModel::new(f, FieldSpec::constant(0.0), SpaceDim::One, Constants::default()).unwrap();
        let grid = Grid1D::new(0.0, 2.0, 3).unwrap();
        let t = discretize_hamiltonian(&model, &grid).unwrap();
        // midpoints -0.5, 0.5, 1.5, 2.5
        assert!((t.diag[0] - 0.5 * (1.25 + 1.25)).abs() < 1e-14);
        assert!((t.diag[1] - 0.5 * (1.25 + 3.25)).abs() < 1e-14);
        assert!((t.offdiag[1] + 0.5 * 3.25).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_models() {
        let f = FieldSpec::expression("x", BTreeMap::new()).unwrap();
        let model = PDMModel::new(f, FieldSpec::constant(0.0), SpaceDim::One, Constants::default()).unwrap();
        let grid = Grid1D::new(-1.0, 1.0, 11).unwrap();
        assert!(matches!(discretize_hamiltonian(&model, &grid), Err(Error::NonPositiveMass { .. })));
        let model2 = PDMModel::harmonic(1.0, SpaceDim::Two, Constants::default()).unwrap();
        assert!(matches!(discretize_hamiltonian(&model2, &grid), Err(Error::DimensionMismatch { .. })));
        let model1 = PDMModel::harmonic(1.0, SpaceDim::One, Constants::default()).unwrap();
        assert!(matches!(slater_exact_numeric(&model1, &grid, 0.0), Err(Error::InvalidBeta(_))));
    }
}
