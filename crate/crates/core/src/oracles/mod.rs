//! Exact references for the semiclassical expansion.
//!
//! * [`pct`]: the closed-form Slater sum of the point-canonical-transformation
//!   model, obtained from the harmonic-oscillator Bloch density.
//! * [`grid`] and [`eigen`]: a flux-conservative finite-difference
//!   discretization of the one-dimensional PDM Hamiltonian and a symmetric
//!   tridiagonal eigensolver, giving `C(x;β) = Σₙ |φₙ(x)|² e^{−βεₙ}` directly.

pub mod eigen;
pub mod grid;
pub mod pct;

pub use eigen::{eigendecompose, eigenvalues, SpectralDecomposition};
pub use grid::{discretize_hamiltonian, slater_exact_numeric, Grid1D, SymTridiag};
pub use pct::{ho_bloch_diag, pct_exact_slater, pct_map};
