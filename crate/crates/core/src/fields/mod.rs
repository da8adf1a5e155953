//! Scalar fields `f(r)` and `U(r)` and their second-order jets.
//!
//! A field is either a parsed expression with parameter bindings or one of
//! the built-in profiles. [`eval_jet2`] returns the value, gradient and
//! Laplacian, exact to rounding: expressions are differentiated by one
//! second-order dual pass per axis, built-ins by closed forms.

mod builtin;
mod dual;
mod expr;

use std::collections::BTreeMap;

pub use builtin::PctProfile;
pub use dual::Dual2;
pub use expr::{coordinate_axis, parse_expression, BinOp, Expr, Func, ParseError};

use crate::common::{Constants, Jet2, Position, SpaceDim};
use crate::error::{Error, Result};

/// Built-in field profiles.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    /// `f(x) = ((1 + x²)/(γ + x²))²`, one-dimensional.
    PctMassRatio {
        profile: PctProfile,
    },
    /// Potential paired with [`Builtin::PctMassRatio`], one-dimensional.
    PctPotential {
        profile: PctProfile,
        omega: f64,
        constants: Constants,
    },
    /// `U(r) = m₀ω²|r|²/2` in any supported dimension.
    Harmonic {
        omega: f64,
        m0: f64,
    },
    Constant {
        value: f64,
    },
}

impl Builtin {
    pub const IDS: [&'static str; 4] = ["pct_mass_ratio", "pct_potential", "harmonic", "constant"];

    pub fn id(&self) -> &'static str {
        match self {
            Builtin::PctMassRatio { .. } => "pct_mass_ratio",
            Builtin::PctPotential { .. } => "pct_potential",
            Builtin::Harmonic { .. } => "harmonic",
            Builtin::Constant { .. } => "constant",
        }
    }

    /// Builds a profile from its id and named parameters (`gamma`, `omega`,
    /// `value`). `omega` defaults to 1.
    pub fn from_id(id: &str, params: &BTreeMap<String, f64>, constants: Constants) -> Result<Self> {
        let get = |name: &str| params.get(name).copied();
        let required = |name: &str| get(name).ok_or_else(|| Error::UnboundParameter(name.to_string()));
        let omega = get("omega").unwrap_or(1.0);
        Ok(match id {
            "pct_mass_ratio" => Builtin::PctMassRatio { profile: PctProfile::new(required("gamma")?)? },
            "pct_potential" => {
                check_omega(omega)?;
                Builtin::PctPotential { profile: PctProfile::new(required("gamma")?)?, omega, constants }
            }
            "harmonic" => {
                check_omega(omega)?;
                Builtin::Harmonic { omega, m0: constants.m0 }
            }
            "constant" => Builtin::Constant { value: required("value")? },
            other => {
                return Err(Error::Parameter {
                    name: "builtin".into(),
                    reason: format!("unknown builtin `{other}` (expected one of {:?})", Builtin::IDS),
                })
            }
        })
    }

    fn jet(&self, point: &Position) -> Result<Jet2> {
        let coords = point.coords();
        let one_dim = || -> Result<f64> {
            if coords.len() != 1 {
                return Err(Error::DimensionMismatch { expected: 1, found: coords.len() });
            }
            Ok(coords[0])
        };
        Ok(match self {
            Builtin::PctMassRatio { profile } => {
                let [f, f1, f2, ..] = profile.mass_ratio_derivatives(one_dim()?);
                Jet2 { value: f, gradient: vec![f1], laplacian: f2 }
            }
            Builtin::PctPotential { profile, omega, constants } => {
                let [u, u1, u2] = profile.potential_derivatives(one_dim()?, *omega, constants);
                Jet2 { value: u, gradient: vec![u1], laplacian: u2 }
            }
            Builtin::Harmonic { omega, m0 } => {
                let k = m0 * omega * omega;
                let r2: f64 = coords.iter().map(|c| c * c).sum();
                Jet2 {
                    value: 0.5 * k * r2,
                    gradient: coords.iter().map(|c| k * c).collect(),
                    laplacian: k * coords.len() as f64,
                }
            }
            Builtin::Constant { value } => Jet2 { value: *value, gradient: vec![0.0; coords.len()], laplacian: 0.0 },
        })
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Parameter { name: "omega".into(), reason: format!("must be positive, got {omega}") });
    }
    Ok(())
}

/// A scalar field definition.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    Expression { ast: Expr, params: BTreeMap<String, f64> },
    Builtin(Builtin),
}

impl FieldSpec {
    /// Parses `text` with the given parameter bindings.
    pub fn expression(text: &str, params: BTreeMap<String, f64>) -> Result<Self> {
        Ok(FieldSpec::Expression { ast: parse_expression(text)?, params })
    }

    pub fn constant(value: f64) -> Self {
        FieldSpec::Builtin(Builtin::Constant { value })
    }

    /// Largest coordinate axis the field can depend on.
    pub fn required_dim(&self) -> Option<usize> {
        match self {
            FieldSpec::Expression { ast, .. } => ast.max_axis().map(|a| a + 1),
            FieldSpec::Builtin(Builtin::PctMassRatio { .. } | Builtin::PctPotential { .. }) => Some(1),
            FieldSpec::Builtin(_) => None,
        }
    }

    /// Checks the field can be evaluated in `dim` dimensions: coordinates in
    /// range and every parameter bound.
    pub fn validate(&self, dim: SpaceDim) -> Result<()> {
        match self {
            FieldSpec::Expression { ast, params } => {
                if let Some(missing) = ast.parameters().into_iter().find(|p| !params.contains_key(p)) {
                    return Err(Error::UnboundParameter(missing));
                }
                if let Some(axis) = ast.max_axis() {
                    if axis >= dim.get() {
                        return Err(Error::DimensionMismatch { expected: dim.get(), found: axis + 1 });
                    }
                }
            }
            FieldSpec::Builtin(Builtin::PctMassRatio { .. } | Builtin::PctPotential { .. }) => {
                if dim != SpaceDim::One {
                    return Err(Error::DimensionMismatch { expected: 1, found: dim.get() });
                }
            }
            FieldSpec::Builtin(_) => {}
        }
        Ok(())
    }
}

/// `f = ((1 + x²)/(γ + x²))²`.
pub fn builtin_pct_mass_ratio(gamma: f64) -> Result<FieldSpec> {
    Ok(FieldSpec::Builtin(Builtin::PctMassRatio { profile: PctProfile::new(gamma)? }))
}

/// The potential that makes [`builtin_pct_mass_ratio`] isospectral with a
/// constant-mass oscillator of frequency `omega`.
pub fn builtin_pct_potential(gamma: f64, omega: f64, constants: Constants) -> Result<FieldSpec> {
    check_omega(omega)?;
    Ok(FieldSpec::Builtin(Builtin::PctPotential { profile: PctProfile::new(gamma)?, omega, constants }))
}

/// Value, gradient and Laplacian of `field` at `point`.
pub fn eval_jet2(field: &FieldSpec, point: &Position) -> Result<Jet2> {
    let jet = match field {
        FieldSpec::Builtin(b) => b.jet(point)?,
        FieldSpec::Expression { ast, params } => {
            let coords = point.coords();
            if let Some(axis) = ast.max_axis() {
                if axis >= coords.len() {
                    return Err(Error::DimensionMismatch { expected: coords.len(), found: axis + 1 });
                }
            }
            let mut value = 0.0;
            let mut gradient = Vec::with_capacity(coords.len());
            let mut laplacian = 0.0;
            for axis in 0..coords.len() {
                let d = eval_dual(ast, coords, Some(axis), params)?;
                value = d.v;
                gradient.push(d.d);
                laplacian += d.dd;
            }
            Jet2 { value, gradient, laplacian }
        }
    };
    if !jet.is_finite() {
        return Err(Error::Eval { node: "field".into(), reason: format!("non-finite jet {jet:?}") });
    }
    Ok(jet)
}

/// Value only.
pub fn eval_value(field: &FieldSpec, point: &Position) -> Result<f64> {
    match field {
        FieldSpec::Builtin(b) => Ok(b.jet(point)?.value),
        FieldSpec::Expression { ast, params } => Ok(eval_dual(ast, point.coords(), None, params)?.v),
    }
}

/// Evaluates `expr` as a dual number seeded along `axis`.
pub fn eval_dual(expr: &Expr, coords: &[f64], axis: Option<usize>, params: &BTreeMap<String, f64>) -> Result<Dual2> {
    let out = match expr {
        Expr::Const(c) => Dual2::constant(*c),
        Expr::Var(i) => {
            let x = *coords.get(*i).ok_or(Error::DimensionMismatch { expected: coords.len(), found: i + 1 })?;
            if axis == Some(*i) {
                Dual2::variable(x)
            } else {
                Dual2::constant(x)
            }
        }
        Expr::Param(name) => Dual2::constant(*params.get(name).ok_or_else(|| Error::UnboundParameter(name.clone()))?),
        Expr::Neg(e) => -eval_dual(e, coords, axis, params)?,
        Expr::Binary { op, lhs, rhs } => {
            let l = eval_dual(lhs, coords, axis, params)?;
            let r = eval_dual(rhs, coords, axis, params)?;
            match op {
                BinOp::Add => l + r,
                BinOp::Sub => l - r,
                BinOp::Mul => l * r,
                BinOp::Div => {
                    if r.v == 0.0 {
                        return Err(eval_error("/", "division by zero"));
                    }
                    l / r
                }
                BinOp::Pow => pow(l, r)?,
            }
        }
        Expr::Call { func, arg } => {
            let a = eval_dual(arg, coords, axis, params)?;
            match func {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Tan => a.tan(),
                Func::Exp => a.exp(),
                Func::Ln => {
                    if a.v <= 0.0 {
                        return Err(eval_error("ln", &format!("argument {} is not positive", a.v)));
                    }
                    a.ln()
                }
                Func::Sqrt => {
                    if a.v < 0.0 {
                        return Err(eval_error("sqrt", &format!("argument {} is negative", a.v)));
                    }
                    a.sqrt()
                }
                Func::Atan => a.atan(),
                Func::Sinh => a.sinh(),
                Func::Cosh => a.cosh(),
                Func::Tanh => a.tanh(),
                Func::Abs => a.abs(),
            }
        }
    };
    if !out.is_finite() {
        return Err(eval_error(node_name(expr), "non-finite result"));
    }
    Ok(out)
}

fn pow(base: Dual2, exponent: Dual2) -> Result<Dual2> {
    if exponent.is_constant() {
        let p = exponent.v;
        if base.v < 0.0 && p.fract() != 0.0 {
            return Err(eval_error("^", "negative base with non-integer exponent"));
        }
        if base.v == 0.0 && p < 0.0 {
            return Err(eval_error("^", "division by zero"));
        }
        return Ok(base.powf(p));
    }
    if base.v <= 0.0 {
        return Err(eval_error("^", "variable exponent requires a positive base"));
    }
    Ok((exponent * base.ln()).exp())
}

fn node_name(expr: &Expr) -> &'static str {
    match expr {
        Expr::Const(_) => "constant",
        Expr::Var(_) => "coordinate",
        Expr::Param(_) => "parameter",
        Expr::Neg(_) => "-",
        Expr::Binary { op, .. } => op.symbol(),
        Expr::Call { func, .. } => func.name(),
    }
}

fn eval_error(node: &str, reason: &str) -> Error {
    Error::Eval { node: node.to_string(), reason: reason.to_string() }
}

/// A position-dependent-mass Hamiltonian `−(ℏ²/2m₀)∇·f∇ + U`.
#[derive(Debug, Clone, PartialEq)]
pub struct PDMModel {
    pub f: FieldSpec,
    pub u: FieldSpec,
    pub dim: SpaceDim,
    pub constants: Constants,
}

impl PDMModel {
    pub fn new(f: FieldSpec, u: FieldSpec, dim: SpaceDim, constants: Constants) -> Result<Self> {
        f.validate(dim)?;
        u.validate(dim)?;
        Ok(Self { f, u, dim, constants })
    }

    /// The exactly solvable one-dimensional model with mass parameter `gamma`.
    pub fn pct(gamma: f64, omega: f64, constants: Constants) -> Result<Self> {
        Self::new(
            builtin_pct_mass_ratio(gamma)?,
            builtin_pct_potential(gamma, omega, constants)?,
            SpaceDim::One,
            constants,
        )
    }

    /// Constant-mass isotropic oscillator.
    pub fn harmonic(omega: f64, dim: SpaceDim, constants: Constants) -> Result<Self> {
        check_omega(omega)?;
        Self::new(
            FieldSpec::constant(1.0),
            FieldSpec::Builtin(Builtin::Harmonic { omega, m0: constants.m0 }),
            dim,
            constants,
        )
    }

    /// Jet of the mass ratio; fails unless `f > 0` at `point`.
    pub fn mass_jet(&self, point: &Position) -> Result<Jet2> {
        point.ensure_dim(self.dim)?;
        let jet = eval_jet2(&self.f, point)?;
        if !(jet.value > 0.0) {
            return Err(Error::NonPositiveMass { at: point.coords().to_vec(), value: jet.value });
        }
        Ok(jet)
    }

    pub fn potential_jet(&self, point: &Position) -> Result<Jet2> {
        point.ensure_dim(self.dim)?;
        eval_jet2(&self.u, point)
    }

    /// `f` at a point, for samplers that need no derivatives.
    pub fn mass_ratio(&self, point: &Position) -> Result<f64> {
        let v = eval_value(&self.f, point)?;
        if !(v > 0.0) {
            return Err(Error::NonPositiveMass { at: point.coords().to_vec(), value: v });
        }
        Ok(v)
    }

    pub fn potential(&self, point: &Position) -> Result<f64> {
        eval_value(&self.u, point)
    }
}
