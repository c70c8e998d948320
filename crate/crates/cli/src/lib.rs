//! Experiment runner for the displab numerical laboratory: TOML
//! configuration, sweep orchestration and deterministic CSV emission.

pub mod config;
pub mod csv_out;
pub mod experiments;
pub mod runner;

pub use config::{parse, Config, ConfigError, Experiment};
pub use csv_out::{emit_csv, write_csv, Cell, CsvError, Table};
pub use experiments::{run, NumericalError, Outcome};
pub use runner::{execute, Cli, RunError};
