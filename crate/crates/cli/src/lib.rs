//! Configuration, batch runs and reports for the `pdm-slater` command.

// `!(x > 0.0)` style checks are deliberate: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod config;
pub mod error;
pub mod figures;
pub mod run;
pub mod table;

pub use config::{load_config, parse_config, ModelKind, Oracle, RunConfig};
pub use error::{CliError, Result};
pub use run::{
    run_compare, run_density, run_exact_grid, run_exact_pct, run_semiclassical, CompareReport, ComparisonRow,
};
