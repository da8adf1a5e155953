//! Built-in mass and potential profiles.
//!
//! The point-canonical-transformation (PCT) model pairs the mass ratio
//! `f(x) = ((1 + x²)/(γ + x²))²` with the potential that maps the PDM problem
//! onto a constant-mass harmonic oscillator in `y = x + (γ−1)·atan(x)`:
//!
//! ```text
//! U(x) = (m₀ω²/2)·y(x)² + (ℏ²/8m₀)·[−f″ + f′²/(4f)]
//! ```
//!
//! `U″` needs `f⁗`, so the profile derivatives are closed-form rather than
//! going through second-order duals.

use crate::common::Constants;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PctProfile {
    gamma: f64,
}

impl PctProfile {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Parameter { name: "gamma".into(), reason: format!("must be positive, got {gamma}") });
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `[f, f′, f″, f‴, f⁗]` at `x`.
    pub fn mass_ratio_derivatives(&self, x: f64) -> [f64; 5] {
        // f = g², g = 1 + a·q, q = 1/s, s = γ + x², a = 1 − γ
        let a = 1.0 - self.gamma;
        let q = 1.0 / (self.gamma + x * x);
        let (q2, q3, q4, q5) = (q * q, q * q * q, q.powi(4), q.powi(5));
        let x2 = x * x;
        let dq = [
            -2.0 * x * q2,
            -2.0 * q2 + 8.0 * x2 * q3,
            24.0 * x * q3 - 48.0 * x * x2 * q4,
            24.0 * q3 - 288.0 * x2 * q4 + 384.0 * x2 * x2 * q5,
        ];
        let g0 = 1.0 + a * q;
        let [g1, g2, g3, g4] = dq.map(|d| a * d);
        [
            g0 * g0,
            2.0 * g0 * g1,
            2.0 * g1 * g1 + 2.0 * g0 * g2,
            6.0 * g1 * g2 + 2.0 * g0 * g3,
            6.0 * g2 * g2 + 8.0 * g1 * g3 + 2.0 * g0 * g4,
        ]
    }

    /// `[y, y′, y″]` of the map `y = x + (γ−1)·atan(x)`.
    pub fn map_derivatives(&self, x: f64) -> [f64; 3] {
        let c = self.gamma - 1.0;
        let w = 1.0 / (1.0 + x * x);
        [x + c * x.atan(), 1.0 + c * w, -2.0 * c * x * w * w]
    }

    /// `[U, U′, U″]` of the mapped potential.
    pub fn potential_derivatives(&self, x: f64, omega: f64, constants: &Constants) -> [f64; 3] {
        let [f, f1, f2, f3, f4] = self.mass_ratio_derivatives(x);
        let [y, y1, y2] = self.map_derivatives(x);
        let k = 0.5 * constants.m0 * omega * omega;
        let s = constants.hbar2_over_m0() / 8.0;

        // W = −f″ + f′²/(4f)
        let w0 = -f2 + f1 * f1 / (4.0 * f);
        let w1 = -f3 + f1 * f2 / (2.0 * f) - f1 * f1 * f1 / (4.0 * f * f);
        let w2 =
            -f4 + (f2 * f2 + f1 * f3) / (2.0 * f) - 5.0 * f1 * f1 * f2 / (4.0 * f * f) + f1.powi(4) / (2.0 * f * f * f);

        [k * y * y + s * w0, k * 2.0 * y * y1 + s * w1, k * (2.0 * y1 * y1 + 2.0 * y * y2) + s * w2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(fun: impl Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
        let (p, m, c) = (fun(x + h), fun(x - h), fun(x));
        ((p - m) / (2.0 * h), (p - 2.0 * c + m) / (h * h))
    }

    #[test]
    fn mass_ratio_derivative_chain_matches_finite_differences() {
        let prof = PctProfile::new(0.6).unwrap();
        for x in [-2.3, -0.7, 0.0, 0.4, 1.0, 3.1] {
            let d = prof.mass_ratio_derivatives(x);
            for k in 0..3 {
                let (d1, d2) = central(|t| prof.mass_ratio_derivatives(t)[k], x, 1e-4);
                assert!((d1 - d[k + 1]).abs() < 1e-6 * (1.0 + d[k + 1].abs()), "k={k} x={x}");
                assert!((d2 - d[k + 2]).abs() < 1e-5 * (1.0 + d[k + 2].abs()), "k={k} x={x}");
            }
        }
    }

    #[test]
    fn potential_derivatives_match_finite_differences() {
        let prof = PctProfile::new(0.6).unwrap();
        let c = Constants::default();
        for x in [-1.9, -0.5, 0.0, 0.8, 2.5] {
            let u = prof.potential_derivatives(x, 1.3, &c);
            let (d1, d2) = central(|t| prof.potential_derivatives(t, 1.3, &c)[0], x, 1e-4);
            assert!((d1 - u[1]).abs() < 1e-6 * (1.0 + u[1].abs()), "x={x}");
            assert!((d2 - u[2]).abs() < 1e-5 * (1.0 + u[2].abs()), "x={x}");
        }
    }

    #[test]
    fn unit_gamma_is_flat() {
        let prof = PctProfile::new(1.0).unwrap();
        for x in [-3.0, 0.0, 0.25, 7.0] {
            assert_eq!(prof.mass_ratio_derivatives(x), [1.0, 0.0, 0.0, 0.0, 0.0]);
            assert_eq!(prof.map_derivatives(x), [x, 1.0, 0.0]);
        }
    }

    #[test]
    fn second_derivative_at_origin() {
        // g = 1 + (1−γ)/(γ+x²): g(0) = 1/γ, g″(0) = −2(1−γ)/γ², f″(0) = 2g(0)g″(0)
        let gamma = 0.6;
        let expected = 2.0 * (1.0 / gamma) * (-2.0 * (1.0 - gamma) / (gamma * gamma));
        let f2 = PctProfile::new(gamma).unwrap().mass_ratio_derivatives(0.0)[2];
        assert!((f2 - expected).abs() < 1e-13);
    }
}
