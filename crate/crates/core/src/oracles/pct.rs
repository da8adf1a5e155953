//! Closed forms of the exactly solvable model.

use std::f64::consts::PI;

use crate::common::Constants;

/// `y = x + (γ−1)·atan(x)`.
pub fn pct_map(x: f64, gamma: f64) -> f64 {
    x + (gamma - 1.0) * x.atan()
}

/// Diagonal Bloch density of the constant-mass oscillator `m₀ω²y²/2`:
///
/// ```text
/// C̃(y;β) = √(m₀ω / (2πℏ sinh βℏω)) · exp(−(m₀ω/ℏ) tanh(βℏω/2) y²)
/// ```
///
/// `beta` and `omega` must be positive.
pub fn ho_bloch_diag(y: f64, beta: f64, omega: f64, constants: &Constants) -> f64 {
    let Constants { hbar, m0 } = *constants;
    let z = beta * hbar * omega;
    (m0 * omega / (2.0 * PI * hbar * z.sinh())).sqrt() * (-(m0 * omega / hbar) * (0.5 * z).tanh() * y * y).exp()
}

/// Exact Slater sum of the model with `f = ((1+x²)/(γ+x²))²`:
/// `C(x;β) = f(x)^{−1/2} · C̃(y(x);β)`.
pub fn pct_exact_slater(x: f64, beta: f64, gamma: f64, omega: f64, constants: &Constants) -> f64 {
    let f = ((1.0 + x * x) / (gamma + x * x)).powi(2);
    ho_bloch_diag(pct_map(x, gamma), beta, omega, constants) / f.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_values() {
        assert_eq!(pct_map(0.0, 0.6), 0.0);
        assert_eq!(pct_map(2.5, 1.0), 2.5);
        assert!((pct_map(1.0, 0.6) - 0.6858407).abs() < 1e-7);
        assert!((pct_map(1.0, 0.6) - (1.0 - 0.4 * PI / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn map_is_increasing() {
        for gamma in [0.05, 0.6, 1.0, 3.0] {
            let mut prev = f64::NEG_INFINITY;
            for i in -200..=200 {
                let y = pct_map(f64::from(i) * 0.05, gamma);
                assert!(y > prev);
                prev = y;
            }
        }
    }

    #[test]
    fn oscillator_bloch_density() {
        let c = Constants::default();
        let c0 = ho_bloch_diag(0.0, 1.0, 1.0, &c);
        assert!((c0 - (1.0 / (2.0 * PI * 1f64.sinh())).sqrt()).abs() < 1e-16);
        assert!((c0 - 0.3680052).abs() < 1e-7);
        let c1 = ho_bloch_diag(1.0, 1.0, 1.0, &c);
        assert!((c1 - c0 * (-(0.5f64).tanh()).exp()).abs() < 1e-16);
        assert!((c1 - 0.2318243).abs() < 1e-7);
    }

    #[test]
    fn oscillator_classical_limit() {
        let c = Constants::default();
        for y in [0.0, 0.7, 1.5] {
            let beta = 1e-4;
            let classical = (1.0 / (2.0 * PI * beta)).sqrt() * (-beta * y * y / 2.0).exp();
            let ratio = ho_bloch_diag(y, beta, 1.0, &c) / classical;
            assert!((ratio - 1.0).abs() < 1e-8, "{ratio}");
        }
    }

    #[test]
    fn exact_slater_values() {
        let c = Constants::default();
        assert!((pct_exact_slater(0.0, 1.0, 0.6, 1.0, &c) - 0.2208031).abs() < 1e-7);
        assert!((pct_exact_slater(0.0, 1.0, 0.8, 1.0, &c) - 0.2944042).abs() < 1e-7);
        for x in [-2.0, 0.0, 0.3, 1.9] {
            assert!((pct_exact_slater(x, 1.3, 1.0, 0.9, &c) - ho_bloch_diag(x, 1.3, 0.9, &c)).abs() < 1e-16);
        }
    }
}
