//! Configuration, sweep orchestration and table output for the `eit` tool.
//!
//! Grid points are evaluated in parallel and merged in grid order, so the
//! files written for a given config are byte-identical for any `--jobs`.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod reports;
pub mod sweep;

pub use config::{Format, OutputSpec, Quantity, RunConfig};
pub use error::{CliError, Result};
pub use output::{Cell, Table};
pub use reports::{run_semiclassical, run_transient, run_uncertainty, Report};
pub use sweep::{run_sweep, sweep_table, SweepRow, SWEEP_COLUMNS};
