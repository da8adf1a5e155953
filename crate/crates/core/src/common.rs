//! Shared numerical vocabulary: physical constants, the supported spatial
//! dimensions, positions, second-order jets and half-integer Gamma values.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Physical constants. The default unit system is `ℏ = m₀ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub hbar: f64,
    pub m0: f64,
}

impl Constants {
    pub fn new(hbar: f64, m0: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::Parameter { name: "hbar".into(), reason: format!("must be positive, got {hbar}") });
        }
        if !(m0 > 0.0 && m0.is_finite()) {
            return Err(Error::Parameter { name: "m0".into(), reason: format!("must be positive, got {m0}") });
        }
        Ok(Self { hbar, m0 })
    }

    /// `ℏ²/m₀`, the combination every kinetic term carries.
    #[inline]
    pub fn hbar2_over_m0(&self) -> f64 {
        self.hbar * self.hbar / self.m0
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self { hbar: 1.0, m0: 1.0 }
    }
}

/// Spatial dimension. Only `d ∈ {1, 2, 3, 4}` is representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceDim {
    One,
    Two,
    Three,
    Four,
}

impl SpaceDim {
    pub const ALL: [SpaceDim; 4] = [SpaceDim::One, SpaceDim::Two, SpaceDim::Three, SpaceDim::Four];

    pub fn new(d: usize) -> Result<Self> {
        match d {
            1 => Ok(SpaceDim::One),
            2 => Ok(SpaceDim::Two),
            3 => Ok(SpaceDim::Three),
            4 => Ok(SpaceDim::Four),
            other => Err(Error::UnsupportedDimension(other)),
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        match self {
            SpaceDim::One => 1,
            SpaceDim::Two => 2,
            SpaceDim::Three => 3,
            SpaceDim::Four => 4,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.get() as f64
    }
}

impl fmt::Display for SpaceDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

impl TryFrom<usize> for SpaceDim {
    type Error = Error;

    fn try_from(d: usize) -> Result<Self> {
        SpaceDim::new(d)
    }
}

/// A point in `d`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct Position {
    coords: Vec<f64>,
}

impl Position {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        SpaceDim::new(coords.len())?;
        Ok(Self { coords })
    }

    /// Point on the first axis of a `dim`-dimensional space.
    pub fn on_axis(x: f64, dim: SpaceDim) -> Self {
        let mut coords = vec![0.0; dim.get()];
        coords[0] = x;
        Self { coords }
    }

    pub fn x(x: f64) -> Self {
        Self { coords: vec![x] }
    }

    pub fn dim(&self) -> SpaceDim {
        // length validated on construction
        SpaceDim::new(self.coords.len()).unwrap()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn ensure_dim(&self, dim: SpaceDim) -> Result<()> {
        if self.coords.len() != dim.get() {
            return Err(Error::DimensionMismatch { expected: dim.get(), found: self.coords.len() });
        }
        Ok(())
    }
}

/// Value, gradient and Laplacian of a scalar field at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub laplacian: f64,
}

impl Jet2 {
    pub fn constant(value: f64, dim: SpaceDim) -> Self {
        Self { value, gradient: vec![0.0; dim.get()], laplacian: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    /// `|∇φ|²`
    pub fn gradient_norm_sq(&self) -> f64 {
        self.gradient.iter().map(|g| g * g).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.laplacian.is_finite() && self.gradient.iter().all(|g| g.is_finite())
    }
}

/// Euclidean inner product.
pub fn dot(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b).sum())
}

/// A half-integer `n/2`, stored as its numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn add_int(self, n: i32) -> Self {
        HalfInt(self.0 + 2 * n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `Γ(a)` for a positive half-integer `a`, by upward recurrence
/// `Γ(a+1) = aΓ(a)` from `Γ(1) = 1` or `Γ(1/2) = √π`.
pub fn gamma_half(a: HalfInt) -> Result<f64> {
    let twice = a.twice();
    if twice <= 0 {
        return Err(Error::Domain(format!("Gamma requires a positive argument, got {}", a.value())));
    }
    let (mut arg, mut g) = if twice % 2 == 0 { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = a.value();
    while arg < target {
        g *= arg;
        arg += 1.0;
    }
    Ok(g)
}

/// `Γ(a)` for positive half-integers `a = n/2`.
pub fn gamma_function(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("Gamma requires a positive argument, got {a}")));
    }
    let twice = 2.0 * a;
    if twice.fract() != 0.0 || twice > f64::from(i32::MAX) {
        return Err(Error::Domain(format!("Gamma is only supported at half-integers, got {a}")));
    }
    gamma_half(HalfInt::from_twice(twice as i32))
}
