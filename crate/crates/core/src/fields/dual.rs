//! Second-order forward-mode dual numbers along a single axis.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// `(v, v', v'')` of a quantity along one coordinate direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual2 {
    pub v: f64,
    pub d: f64,
    pub dd: f64,
}

impl Dual2 {
    pub const fn constant(v: f64) -> Self {
        Self { v, d: 0.0, dd: 0.0 }
    }

    pub const fn variable(v: f64) -> Self {
        Self { v, d: 1.0, dd: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d.is_finite() && self.dd.is_finite()
    }

    pub fn is_constant(&self) -> bool {
        self.d == 0.0 && self.dd == 0.0
    }

    /// Compose with a scalar function given its value and first two
    /// derivatives at `self.v`.
    #[inline]
    pub fn chain(self, g: f64, dg: f64, ddg: f64) -> Self {
        if self.is_constant() {
            return Self::constant(g);
        }
        Self { v: g, d: dg * self.d, dd: ddg * self.d * self.d + dg * self.dd }
    }

    /// `self^p` for a constant exponent.
    pub fn powf(self, p: f64) -> Self {
        let g = self.v.powf(p);
        let dg = if p == 0.0 { 0.0 } else { p * self.v.powf(p - 1.0) };
        let ddg = if p == 0.0 || p == 1.0 { 0.0 } else { p * (p - 1.0) * self.v.powf(p - 2.0) };
        self.chain(g, dg, ddg)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let inv = 1.0 / self.v;
        self.chain(self.v.ln(), inv, -inv * inv)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * s * s))
    }

    pub fn atan(self) -> Self {
        let w = 1.0 / (1.0 + self.v * self.v);
        self.chain(self.v.atan(), w, -2.0 * self.v * w * w)
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(self) -> Self {
        let t = self.v.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn abs(self) -> Self {
        let sign = if self.v > 0.0 {
            1.0
        } else if self.v < 0.0 {
            -1.0
        } else {
            0.0
        };
        self.chain(self.v.abs(), sign, 0.0)
    }
}

impl Add for Dual2 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { v: self.v + rhs.v, d: self.d + rhs.d, dd: self.dd + rhs.dd }
    }
}

impl Sub for Dual2 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self { v: self.v - rhs.v, d: self.d - rhs.d, dd: self.dd - rhs.dd }
    }
}

impl Mul for Dual2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self {
            v: self.v * rhs.v,
            d: self.d * rhs.v + self.v * rhs.d,
            dd: self.dd * rhs.v + 2.0 * self.d * rhs.d + self.v * rhs.dd,
        }
    }
}

impl Div for Dual2 {
    type Output = Self;

    /// The caller guarantees `rhs.v != 0`.
    fn div(self, rhs: Self) -> Self {
        let q = self.v / rhs.v;
        let dq = (self.d - q * rhs.d) / rhs.v;
        let ddq = (self.dd - 2.0 * dq * rhs.d - q * rhs.dd) / rhs.v;
        Self { v: q, d: dq, dd: ddq }
    }
}

impl Neg for Dual2 {
    type Output = Self;

    fn neg(self) -> Self {
        Self { v: -self.v, d: -self.d, dd: -self.dd }
    }
}
