//! Configuration, presets, runners and writers behind the `nlc` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod runner;

pub use config::{load_config, parse_config, OutputFormat, RunConfig};
pub use error::{CliError, ErrorKind};
pub use output::{emit, render, Table};
pub use presets::FigurePreset;
pub use runner::{
    run_simulation, run_sweep, validate_command, SweepRow, SweepSpec, SweptParameter,
    ValidationReport,
};
