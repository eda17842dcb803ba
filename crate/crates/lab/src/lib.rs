//! Configuration, data-generator registry, report formats and subcommand
//! drivers for the `timoshenko` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod fft;
pub mod generators;
pub mod report;
pub mod runs;

pub use config::{emit_config, parse_config, Command, ConfigError, RunConfig};
pub use generators::{generate_data, generator};
pub use report::{emit_reports, Check, Report, Table};
pub use runs::run;

/// Environment variable that overrides `output.dir`.
pub const OUT_DIR_ENV: &str = "TIMOSHENKO_OUT_DIR";

pub mod exit {
    pub const PASS: u8 = 0;
    pub const BAND_FAILURE: u8 = 1;
    pub const CONFIG_ERROR: u8 = 2;
    pub const NUMERICAL_FAILURE: u8 = 3;
}
