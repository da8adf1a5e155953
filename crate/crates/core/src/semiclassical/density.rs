//! Density expansions and the Laplace route to the Slater sum.

use std::f64::consts::PI;

use crate::common::{gamma_half, HalfInt, Position, SpaceDim};
use crate::error::{Error, Result};
use crate::fields::PDMModel;

use super::{check_beta, half_power, ExpansionTerm, LocalFields};

const NU_HALF: HalfInt = HalfInt::from_twice(1);
const NU_MINUS_HALF: HalfInt = HalfInt::from_twice(-1);
const NU_THREE_HALVES: HalfInt = HalfInt::from_twice(3);

/// The density expansion at `point` as a list of λ-derivative terms.
/// Terms whose coefficient vanishes identically at `point` are dropped.
///
/// In three dimensions the `(λ−V)^{−3/2}θ` contribution is carried as
/// `−2∂_λ[(λ−V)^{−1/2}θ]`, its finite-part equivalent, so every term with
/// `k = 0` stays integrable.
pub fn density_expansion_terms(model: &PDMModel, point: &Position) -> Result<Vec<ExpansionTerm>> {
    let lf = LocalFields::at(model, point)?;
    let mut terms = match lf.dim {
        SpaceDim::One => terms_1d(&lf),
        SpaceDim::Two => terms_2d(&lf),
        SpaceDim::Three => terms_3d(&lf),
        SpaceDim::Four => terms_4d(&lf),
    };
    terms.retain(|t| t.coeff != 0.0);
    Ok(terms)
}

fn terms_1d(lf: &LocalFields) -> Vec<ExpansionTerm> {
    let (h2, m0, f) = (lf.hbar * lf.hbar, lf.m0, lf.f);
    let (df, du, d2u) = (lf.grad_f[0], lf.grad_u[0], lf.lap_u);
    let a = (h2 * f / (2.0 * m0)).sqrt();
    vec![
        ExpansionTerm::new((2.0 * m0 / (h2 * f)).sqrt() / PI, NU_HALF, 0),
        ExpansionTerm::new(a / (16.0 * PI) * (df / f).powi(2), NU_HALF, 1),
        ExpansionTerm::new(-a / (24.0 * PI) * (2.0 * d2u + df * du / f), NU_MINUS_HALF, 1),
        ExpansionTerm::new(a / (24.0 * PI) * du * du, NU_MINUS_HALF, 2),
    ]
}

fn terms_2d(lf: &LocalFields) -> Vec<ExpansionTerm> {
    let (h2, m0, f) = (lf.hbar * lf.hbar, lf.m0, lf.f);
    let nu0 = HalfInt::int(0);
    vec![
        ExpansionTerm::new(m0 / (2.0 * PI * h2 * f), HalfInt::int(1), 0),
        ExpansionTerm::new((lf.grad_f_sq / (f * f) - lf.lap_f / f) / (48.0 * PI), nu0, 0),
        ExpansionTerm::new(-lf.lap_u / (24.0 * PI), nu0, 1),
        ExpansionTerm::new(lf.grad_u_sq / (48.0 * PI), nu0, 2),
    ]
}

fn terms_3d(lf: &LocalFields) -> Vec<ExpansionTerm> {
    let (hbar, m0, f) = (lf.hbar, lf.m0, lf.f);
    let p = (m0 / (2.0 * f)).sqrt() / (24.0 * PI * PI * hbar);
    vec![
        ExpansionTerm::new((2.0 * m0 / f).powf(1.5) / (6.0 * PI * PI * hbar.powi(3)), NU_THREE_HALVES, 0),
        ExpansionTerm::new(p * (1.75 * lf.grad_f_sq / (f * f) - 2.0 * lf.lap_f / f), NU_HALF, 0),
        ExpansionTerm::new(p * (0.5 * lf.f_dot_u / f - lf.lap_u), NU_MINUS_HALF, 0),
        ExpansionTerm::new(p * 0.5 * lf.grad_u_sq, NU_MINUS_HALF, 1),
    ]
}

fn terms_4d(lf: &LocalFields) -> Vec<ExpansionTerm> {
    let (h2, m0, f) = (lf.hbar * lf.hbar, lf.m0, lf.f);
    let q = m0 / (PI * PI * h2 * f);
    let nu0 = HalfInt::int(0);
    vec![
        ExpansionTerm::new(m0 * m0 / (8.0 * PI * PI * h2 * h2 * f * f), HalfInt::int(2), 0),
        ExpansionTerm::new(q / 32.0 * (lf.grad_f_sq / (f * f) - lf.lap_f / f), HalfInt::int(1), 0),
        ExpansionTerm::new(q / 48.0 * (lf.f_dot_u / f), nu0, 0),
        ExpansionTerm::new(-q / 48.0 * lf.lap_u, nu0, 0),
        ExpansionTerm::new(q / 96.0 * lf.grad_u_sq, nu0, 1),
    ]
}

/// Smooth part of the density at Fermi energy `lambda`, valid strictly
/// inside the classically allowed region `λ > V`.
pub fn density_semiclassical(model: &PDMModel, point: &Position, lambda: f64) -> Result<f64> {
    let lf = LocalFields::at(model, point)?;
    let e = lambda - lf.v;
    if !(e > 0.0) {
        return Err(Error::TurningPoint { lambda, v: lf.v });
    }
    let (hbar, m0, f) = (lf.hbar, lf.m0, lf.f);
    let h2 = hbar * hbar;
    Ok(match lf.dim {
        SpaceDim::One => {
            let (df, du) = (lf.grad_f[0], lf.grad_u[0]);
            let a = (h2 * f / (2.0 * m0)).sqrt();
            (2.0 * m0 / (h2 * f)).sqrt() / PI * e.sqrt()
                + a * ((df / f).powi(2) / (32.0 * PI) * e.powf(-0.5)
                    + (2.0 * lf.lap_u + df * du / f) / (48.0 * PI) * e.powf(-1.5)
                    + du * du / (32.0 * PI) * e.powf(-2.5))
        }
        SpaceDim::Two => m0 / (2.0 * PI * h2 * f) * e + (lf.grad_f_sq / (f * f) - lf.lap_f / f) / (48.0 * PI),
        SpaceDim::Three => {
            let p = (m0 / (2.0 * f)).sqrt() / (24.0 * PI * PI * hbar);
            (2.0 * m0 / f).powf(1.5) / (6.0 * PI * PI * hbar.powi(3)) * e.powf(1.5)
                + p * ((1.75 * lf.grad_f_sq / (f * f) - 2.0 * lf.lap_f / f) * e.sqrt()
                    + (0.5 * lf.f_dot_u / f - lf.lap_u) * e.powf(-0.5)
                    - 0.25 * lf.grad_u_sq * e.powf(-1.5))
        }
        SpaceDim::Four => {
            let q = m0 / (PI * PI * h2 * f);
            m0 * m0 / (8.0 * PI * PI * h2 * h2 * f * f) * e * e
                + q / 32.0 * (lf.grad_f_sq / (f * f) - lf.lap_f / f) * e
                + q / 48.0 * (lf.f_dot_u / f)
                - q / 48.0 * lf.lap_u
        }
    })
}

/// `∫₀^∞ e^{−βλ} term(λ) dλ = coeff·βᵏ·Γ(ν+1)·β^{−ν−1}·e^{−βV}`.
pub fn laplace_of_term(term: &ExpansionTerm, v_value: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if term.deriv_order == 0 && term.nu.twice() <= -2 {
        return Err(Error::NonIntegrable { nu: term.nu.value() });
    }
    let gamma = gamma_half(term.nu.add_int(1))?;
    let power = HalfInt::int(i32::from(term.deriv_order)).add_int(-1);
    let power = HalfInt::from_twice(power.twice() - term.nu.twice());
    Ok(term.coeff * gamma * half_power(beta, power) * (-beta * v_value).exp())
}

/// Slater sum assembled from the density expansion: `β Σ L[term]`.
pub fn slater_from_density(model: &PDMModel, point: &Position, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let v = LocalFields::at(model, point)?.v;
    let mut sum = 0.0;
    for term in density_expansion_terms(model, point)? {
        sum += laplace_of_term(&term, v, beta)?;
    }
    Ok(beta * sum)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::common::Constants;
    use crate::fields::FieldSpec;
    use crate::semiclassical::{effective_potential, slater_sum, slater_sum_v_form};

    fn model(f: &str, u: &str, d: usize) -> PDMModel {
        let e = |s: &str| FieldSpec::expression(s, BTreeMap::new()).unwrap();
        PDMModel::new(e(f), e(u), SpaceDim::new(d).unwrap(), Constants::default()).unwrap()
    }

    /// Trapezoid rule on `[0, hi]` with `n` panels.
    fn trapezoid(g: impl Fn(f64) -> f64, hi: f64, n: usize) -> f64 {
        let h = hi / n as f64;
        let mut acc = 0.5 * (g(0.0) + g(hi));
        for i in 1..n {
            acc += g(i as f64 * h);
        }
        acc * h
    }

    #[test]
    fn laplace_examples() {
        let t = ExpansionTerm::new(1.0, HalfInt::int(0), 0);
        assert_eq!(laplace_of_term(&t, 0.0, 1.0).unwrap(), 1.0);
        let t = ExpansionTerm::new(1.0, NU_HALF, 0);
        assert!((laplace_of_term(&t, 0.0, 1.0).unwrap() - 0.886_226_925_452_758).abs() < 1e-15);
        let t = ExpansionTerm::new(1.0, HalfInt::int(0), 1);
        assert!((laplace_of_term(&t, 2.0, 3.0).unwrap() - (-6.0_f64).exp()).abs() < 1e-18);
    }

    #[test]
    fn laplace_matches_quadrature() {
        // k = 0, ν = 1/2 at V = 0.7, β = 1.9: substitute λ − V = s²
        let (v, beta): (f64, f64) = (0.7, 1.9);
        let quad = (-beta * v).exp() * trapezoid(|s| 2.0 * s * s * (-beta * s * s).exp(), 12.0, 200_000);
        let t = ExpansionTerm::new(1.0, NU_HALF, 0);
        let exact = laplace_of_term(&t, v, beta).unwrap();
        assert!(((quad - exact) / exact).abs() < 1e-10, "{quad} vs {exact}");

        // k = 1, ν = 1/2: ∂_λ(λ−V)^{1/2} = ½(λ−V)^{−1/2}, integrable
        let quad = (-beta * v).exp() * trapezoid(|s| (-beta * s * s).exp(), 12.0, 200_000);
        let t = ExpansionTerm::new(1.0, NU_HALF, 1);
        let exact = laplace_of_term(&t, v, beta).unwrap();
        assert!(((quad - exact) / exact).abs() < 1e-10, "{quad} vs {exact}");

        // k = 0, ν = 2
        let quad = (-beta * v).exp() * trapezoid(|s| s * s * (-beta * s).exp(), 40.0, 400_000);
        let t = ExpansionTerm::new(1.0, HalfInt::int(2), 0);
        let exact = laplace_of_term(&t, v, beta).unwrap();
        assert!(((quad - exact) / exact).abs() < 1e-8, "{quad} vs {exact}");
    }

    #[test]
    fn non_integrable_term() {
        let t = ExpansionTerm::new(1.0, HalfInt::from_twice(-3), 0);
        assert!(matches!(laplace_of_term(&t, 0.0, 1.0), Err(Error::NonIntegrable { .. })));
        let t = ExpansionTerm::new(1.0, HalfInt::int(-1), 0);
        assert!(matches!(laplace_of_term(&t, 0.0, 1.0), Err(Error::NonIntegrable { .. })));
        let t = ExpansionTerm::new(1.0, NU_HALF, 0);
        assert!(matches!(laplace_of_term(&t, 0.0, -1.0), Err(Error::InvalidBeta(_))));
    }

    #[test]
    fn free_particle_densities() {
        let d1 = density_semiclassical(&model("1", "0", 1), &Position::x(0.0), 1.0).unwrap();
        assert!((d1 - 2f64.sqrt() / PI).abs() < 1e-15);
        assert!((d1 - 0.4501582).abs() < 1e-7);
        let m3 = model("1", "0", 3);
        let d3 = density_semiclassical(&m3, &Position::on_axis(0.0, SpaceDim::Three), 1.0).unwrap();
        assert!((d3 - 2f64.powf(1.5) / (6.0 * PI * PI)).abs() < 1e-15);
        assert!((d3 - 0.0477633).abs() < 1e-7);
    }

    #[test]
    fn turning_point_is_refused() {
        let m = model("1", "x^2/2", 1);
        assert!(matches!(density_semiclassical(&m, &Position::x(2.0), 2.0), Err(Error::TurningPoint { .. })));
        assert!(matches!(density_semiclassical(&m, &Position::x(3.0), 2.0), Err(Error::TurningPoint { .. })));
    }

    #[test]
    fn term_structure() {
        let pct = PDMModel::pct(0.6, 1.0, Constants::default()).unwrap();
        let terms = density_expansion_terms(&pct, &Position::x(1.0)).unwrap();
        assert_eq!(terms.len(), 4);
        let shape: Vec<_> = terms.iter().map(|t| (t.nu.twice(), t.deriv_order)).collect();
        assert_eq!(shape, vec![(1, 0), (1, 1), (-1, 1), (-1, 2)]);

        let free4 = model("1", "0", 4);
        let terms = density_expansion_terms(&free4, &Position::on_axis(0.5, SpaceDim::Four)).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!((terms[0].nu, terms[0].deriv_order), (HalfInt::int(2), 0));
        assert!((terms[0].coeff - 1.0 / (8.0 * PI * PI)).abs() < 1e-16);

        // constant mass: only the Thomas-Fermi term and potential terms survive
        for d in 1..=4 {
            let m = model("1", "0.3*x^2 + 0.1*x", d);
            let p = Position::on_axis(0.4, m.dim);
            let lf = LocalFields::at(&m, &p).unwrap();
            let all = match m.dim {
                SpaceDim::One => terms_1d(&lf),
                SpaceDim::Two => terms_2d(&lf),
                SpaceDim::Three => terms_3d(&lf),
                SpaceDim::Four => terms_4d(&lf),
            };
            let mass_only: &[usize] = match d {
                1 => &[1],
                2 => &[1],
                3 => &[1],
                _ => &[1, 2],
            };
            for &i in mass_only {
                assert_eq!(all[i].coeff, 0.0, "d={d} term {i}");
            }
        }
    }

    #[test]
    fn pointwise_terms_reproduce_density() {
        let models = [
            PDMModel::pct(0.6, 1.0, Constants::default()).unwrap(),
            model("1 + 0.2*x^2 + 0.1*y", "0.5*(x^2 + y^2)", 2),
            model("exp(0.1*x - 0.05*z^2)", "0.5*x^2 + 0.2*y*z", 3),
            model("1/(1 + 0.1*w^2) + 0.05*x", "0.3*(x^2 + y^2 + z^2 + w^2)", 4),
        ];
        for m in &models {
            let p = Position::on_axis(0.4, m.dim);
            let v = effective_potential(m, &p).unwrap().value;
            let lambda = v + 2.5;
            let direct = density_semiclassical(m, &p, lambda).unwrap();
            let from_terms: f64 =
                density_expansion_terms(m, &p).unwrap().iter().map(|t| t.pointwise(v, lambda).unwrap()).sum();
            assert!(((direct - from_terms) / direct).abs() < 1e-13, "d={}: {direct} vs {from_terms}", m.dim);
        }
    }

    #[test]
    fn laplace_route_matches_closed_forms() {
        let m = model("1", "x^2/2", 1);
        let c = slater_from_density(&m, &Position::x(0.0), 1.0).unwrap();
        assert!((c - 0.3656971).abs() < 1e-7);
        let free2 = model("1", "0", 2);
        let c = slater_from_density(&free2, &Position::on_axis(0.0, SpaceDim::Two), 1.0).unwrap();
        assert!((c - 1.0 / (2.0 * PI)).abs() < 1e-16);

        let pct = PDMModel::pct(0.6, 1.0, Constants::default()).unwrap();
        for x in [-1.5, 0.0, 0.6, 2.0] {
            let p = Position::x(x);
            let a = slater_from_density(&pct, &p, 1.0).unwrap();
            let b = slater_sum_v_form(&pct, &p, 1.0).unwrap();
            assert!(((a - b) / b).abs() < 1e-13, "x={x}");
        }
        // δ-free constant-mass 1D reduces to the U form
        let b = slater_sum(&m, &Position::x(0.0), 1.0).unwrap().total;
        assert!((slater_from_density(&m, &Position::x(0.0), 1.0).unwrap() - b).abs() < 1e-15);
    }
}
