use thiserror::Error;

use crate::fields::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported spatial dimension {0} (supported: 1, 2, 3, 4)")]
    UnsupportedDimension(usize),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("evaluation error in `{node}`: {reason}")]
    Eval { node: String, reason: String },

    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: String, reason: String },

    #[error("mass ratio must be positive, got f = {value} at {at:?}")]
    NonPositiveMass { at: Vec<f64>, value: f64 },

    #[error("beta must be positive and finite, got {0}")]
    InvalidBeta(f64),

    #[error("turning point: lambda = {lambda} does not exceed V = {v}; the density is distribution-valued here")]
    TurningPoint { lambda: f64, v: f64 },

    #[error("term (lambda - V)^{nu} is not integrable without a lambda-derivative")]
    NonIntegrable { nu: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("eigensolver did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },
}
