//! Identity and property checks run by the `check` subcommand.

use std::collections::BTreeMap;

use pdm_slater::oracles::{
    discretize_hamiltonian, eigendecompose, eigenvalues, ho_bloch_diag, pct_exact_slater, Grid1D,
};
use pdm_slater::semiclassical::{
    correction_breakdown, delta_correction_1d, slater_from_density, slater_sum, slater_sum_fixed_dim, slater_sum_v_form,
};
use pdm_slater::{Constants, FieldSpec, PDMModel, Position, SpaceDim};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;

pub const SAMPLES_PER_DIM: usize = 100;
const SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self { name, passed, detail }
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// A model, point and β drawn from a family of smooth models: a positive
/// mass ratio with a sinusoidal ripple and a Gaussian bump, and a confining
/// quadratic potential with a cosine ripple and a linear tilt.
#[derive(Debug, Clone)]
pub struct Sample {
    pub model: PDMModel,
    pub point: Position,
    pub beta: f64,
}

pub fn random_sample(rng: &mut ChaCha8Rng, dim: SpaceDim) -> Sample {
    let d = dim.get();
    let axes = |prefix: &str, op: &str| (1..=d).map(|i| format!("{prefix}{i}{op}x{i}")).collect::<Vec<_>>().join(" + ");
    let r2 = (1..=d).map(|i| format!("x{i}^2")).collect::<Vec<_>>().join(" + ");
    let mut params = BTreeMap::new();
    let mut put = |name: String, lo: f64, hi: f64| {
        params.insert(name, rng.gen_range(lo..hi));
    };
    put("fa".into(), 0.5, 2.0);
    put("fb".into(), -0.3, 0.3);
    put("fc".into(), 0.0, 0.3);
    put("fp".into(), -3.0, 3.0);
    put("fs".into(), 0.5, 3.0);
    put("uk".into(), 0.2, 1.5);
    put("ue".into(), -0.5, 0.5);
    put("ug".into(), -0.5, 0.5);
    put("up".into(), -3.0, 3.0);
    for i in 1..=d {
        put(format!("fk{i}"), -1.0, 1.0);
        put(format!("uq{i}"), -1.0, 1.0);
    }
    let f = format!("fa*(1 + fb*sin({} + fp) + fc*exp(-({r2})/fs))", axes("fk", "*"));
    let u = format!("uk*({r2})/2 + ue*cos({} + up) + ug*x1", axes("uq", "*"));
    let constants = Constants::new(rng.gen_range(0.5..1.5), rng.gen_range(0.5..2.0)).expect("valid constants");
    let model = PDMModel::new(
        FieldSpec::expression(&f, params.clone()).expect("valid expression"),
        FieldSpec::expression(&u, params).expect("valid expression"),
        dim,
        constants,
    )
    .expect("valid model");
    let point = Position::new((0..d).map(|_| rng.gen_range(-1.5..1.5)).collect()).expect("valid point");
    Sample { model, point, beta: rng.gen_range(0.3..2.0) }
}

/// `SAMPLES_PER_DIM` samples for every supported dimension, reproducibly.
pub fn random_samples() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    SpaceDim::ALL
        .iter()
        .flat_map(|&d| (0..SAMPLES_PER_DIM).map(|_| random_sample(&mut rng, d)).collect::<Vec<_>>())
        .collect()
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn max_over(samples: &[Sample], f: impl Fn(&Sample) -> pdm_slater::Result<f64> + Sync) -> Result<f64> {
    let v = samples.par_iter().map(&f).collect::<pdm_slater::Result<Vec<f64>>>()?;
    Ok(v.into_iter().fold(0.0, f64::max))
}

pub fn dimension_specialization(samples: &[Sample]) -> Result<f64> {
    max_over(samples, |s| {
        let general = slater_sum_v_form(&s.model, &s.point, s.beta)?;
        let fixed = slater_sum_fixed_dim(&s.model, &s.point, s.beta, s.model.dim)?;
        Ok(rel_diff(general, fixed))
    })
}

pub fn laplace_reconstruction(samples: &[Sample]) -> Result<f64> {
    max_over(samples, |s| {
        Ok(rel_diff(slater_from_density(&s.model, &s.point, s.beta)?, slater_sum_v_form(&s.model, &s.point, s.beta)?))
    })
}

pub fn one_dimensional_correction(samples: &[Sample]) -> Result<f64> {
    let one_d: Vec<Sample> = samples.iter().filter(|s| s.model.dim == SpaceDim::One).cloned().collect();
    max_over(&one_d, |s| {
        Ok(rel_diff(
            delta_correction_1d(&s.model, &s.point, s.beta)?,
            slater_sum(&s.model, &s.point, s.beta)?.correction,
        ))
    })
}

/// With `f ≡ 1`: largest |mass term| (must be exactly 0) and largest relative
/// deviation of the correction from `(ℏ²/24m₀)(−2∇²U β² + (∇U)²β³)·leading`.
pub fn constant_mass_reduction(samples: &[Sample]) -> Result<(f64, f64)> {
    let v = samples
        .par_iter()
        .map(|s| {
            let m = PDMModel::new(FieldSpec::constant(1.0), s.model.u.clone(), s.model.dim, s.model.constants)?;
            let b = correction_breakdown(&m, &s.point, s.beta)?;
            let mass = b.mass_terms().iter().fold(0.0_f64, |a, t| a.max(t.abs()));
            let u = m.potential_jet(&s.point)?;
            let c = m.constants;
            let r = slater_sum(&m, &s.point, s.beta)?;
            let wk = r.leading * c.hbar * c.hbar / (24.0 * c.m0)
                * (-2.0 * u.laplacian * s.beta.powi(2) + u.gradient_norm_sq() * s.beta.powi(3));
            Ok((mass, rel_diff(r.correction, wk)))
        })
        .collect::<pdm_slater::Result<Vec<_>>>()?;
    Ok(v.into_iter().fold((0.0, 0.0), |(a, b), (m, r)| (a.max(m), b.max(r))))
}

/// Semiclassical and exact oscillator Slater sums at x = 0, β = ω = m₀ = 1.
pub fn oscillator_pair(hbar: f64) -> Result<(f64, f64)> {
    let c = Constants::new(hbar, 1.0)?;
    let m = PDMModel::harmonic(1.0, SpaceDim::One, c)?;
    Ok((slater_sum(&m, &Position::x(0.0), 1.0)?.total, ho_bloch_diag(0.0, 1.0, 1.0, &c)))
}

/// U-form total and V-form value for the transformed-oscillator model.
pub fn potential_forms(hbar: f64, x: f64, gamma: f64) -> Result<(f64, f64)> {
    let c = Constants::new(hbar, 1.0)?;
    let m = PDMModel::pct(gamma, 1.0, c)?;
    let p = Position::x(x);
    Ok((slater_sum(&m, &p, 1.0)?.total, slater_sum_v_form(&m, &p, 1.0)?))
}

/// Largest |εₖ − (k + ½)| over the first ten levels of the discretized
/// transformed-oscillator Hamiltonian (ℏ = m₀ = ω = 1).
pub fn spectrum_deviation(gamma: f64, grid: &Grid1D) -> Result<f64> {
    let m = PDMModel::pct(gamma, 1.0, Constants::default())?;
    let ev = eigenvalues(&discretize_hamiltonian(&m, grid)?)?;
    Ok(ev.iter().take(10).enumerate().map(|(k, e)| (e - (k as f64 + 0.5)).abs()).fold(0.0, f64::max))
}

/// Largest relative deviation of the spectral Slater sum from the closed form
/// over |x| ≤ 3 at β = 1.
pub fn spectral_vs_closed_form(gamma: f64, grid: &Grid1D) -> Result<f64> {
    let c = Constants::default();
    let m = PDMModel::pct(gamma, 1.0, c)?;
    let values = eigendecompose(&discretize_hamiltonian(&m, grid)?)?.slater_diagonal(1.0);
    Ok(grid
        .nodes()
        .iter()
        .zip(&values)
        .filter(|(x, _)| x.abs() <= 3.0)
        .map(|(&x, &v)| {
            let e = pct_exact_slater(x, 1.0, gamma, 1.0, &c);
            (v - e).abs() / e
        })
        .fold(0.0, f64::max))
}

/// Largest |total/leading − 1| at β = 1e-4 over the samples.
pub fn high_temperature_deviation(samples: &[Sample]) -> Result<f64> {
    max_over(samples, |s| {
        let r = slater_sum(&s.model, &s.point, 1e-4)?;
        Ok((r.total / r.leading - 1.0).abs())
    })
}

pub fn run_all() -> Result<Vec<CheckOutcome>> {
    let samples = random_samples();
    let n = samples.len();
    let mut out = Vec::new();

    let d = dimension_specialization(&samples)?;
    out.push(CheckOutcome::new(
        "dimension specialization",
        d <= 1e-12,
        format!("max rel diff {d:.3e} over {n} samples (tol 1e-12)"),
    ));

    let d = laplace_reconstruction(&samples)?;
    out.push(CheckOutcome::new(
        "laplace reconstruction",
        d <= 1e-12,
        format!("max rel diff {d:.3e} over {n} samples (tol 1e-12)"),
    ));

    let d = one_dimensional_correction(&samples)?;
    out.push(CheckOutcome::new("one-dimensional correction", d <= 1e-14, format!("max rel diff {d:.3e} (tol 1e-14)")));

    let (mass, wk) = constant_mass_reduction(&samples)?;
    out.push(CheckOutcome::new(
        "constant-mass reduction",
        mass == 0.0 && wk <= 1e-13,
        format!("max |mass term| {mass:e}, max rel diff {wk:.3e} (tol 1e-13)"),
    ));

    let rel = |(a, e): (f64, f64)| (a - e).abs() / e;
    let ratio = rel(oscillator_pair(1.0)?) / rel(oscillator_pair(0.5)?);
    out.push(CheckOutcome::new(
        "oscillator truncation order",
        (12.0..=20.0).contains(&ratio),
        format!("relative error ratio {ratio:.3} (want [12, 20])"),
    ));

    let diff = |(u, v): (f64, f64)| (v - u).abs() / u.abs();
    let ratio = diff(potential_forms(1.0, 1.0, 0.6)?) / diff(potential_forms(0.5, 1.0, 0.6)?);
    out.push(CheckOutcome::new(
        "potential-form agreement",
        (12.0..=20.0).contains(&ratio),
        format!("relative difference ratio {ratio:.3} (want [12, 20])"),
    ));

    let d = high_temperature_deviation(&samples)?;
    out.push(CheckOutcome::new(
        "high-temperature limit",
        d <= 1e-3,
        format!("max |total/leading - 1| at beta=1e-4: {d:.3e}"),
    ));

    let grid = Grid1D::new(-20.0, 20.0, 4000)?;
    let d = spectrum_deviation(0.6, &grid)?;
    out.push(CheckOutcome::new(
        "transformed-model spectrum",
        d <= 1e-3,
        format!("max |e_k - (k+1/2)|, k<10: {d:.3e} (tol 1e-3)"),
    ));

    let grid = Grid1D::new(-10.0, 10.0, 2001)?;
    let worst = [0.6, 0.8, 1.0].par_iter().map(|&g| spectral_vs_closed_form(g, &grid)).collect::<Result<Vec<_>>>()?;
    let d = worst.iter().copied().fold(0.0, f64::max);
    out.push(CheckOutcome::new(
        "spectral vs closed form",
        d <= 1e-4,
        format!("max rel err over |x|<=3: {d:.3e} (tol 1e-4)"),
    ));

    Ok(out)
}
