//! Command-line driver for the `finphase` library: dimension sweeps,
//! uncertainty tables and figure data as CSV or JSON.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::run;
pub use config::{Command, Family, Format, NRange, Overrides, Preset, RunConfig, StateSpec};
pub use error::{CliError, CliResult};
pub use table::{sci, Cell, ColumnKind, ResultTable};
