//! Second-order (ℏ²) gradient expansion of the Slater sum, the diagonal of the
//! Bloch propagator `⟨r|exp(-βH)|r⟩`, for Hamiltonians with a position-dependent
//! effective mass in the symmetric ordering
//!
//! ```text
//! H = -(ℏ²/2m₀) ∇·f(r)∇ + U(r),    f = m₀/m*(r)
//! ```
//!
//! in `d = 1, 2, 3, 4` spatial dimensions, together with two exact references
//! used to validate it: the closed-form point-canonical-transformation model and
//! a finite-difference spectral solver.
//!
//! Module map:
//!
//! * [`common`]: constants, dimensions, jets and half-integer Gamma values.
//! * [`fields`]: expression language with exact second-order forward-mode
//!   differentiation and the built-in mass/potential profiles.
//! * [`semiclassical`]: density expansions, Laplace term algebra and the Slater
//!   sum in its `V` and `U` forms.
//! * [`oracles`]: the exactly solvable model and the grid spectral solver.

// `!(x > 0.0)` style checks are deliberate: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod common;
pub mod error;
pub mod fields;
pub mod oracles;
pub mod semiclassical;

pub use common::{dot, gamma_function, Constants, HalfInt, Jet2, Position, SpaceDim};
pub use error::{Error, Result};
pub use fields::{FieldSpec, PDMModel};
pub use semiclassical::{ExpansionTerm, SlaterResult};
