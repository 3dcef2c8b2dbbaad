//! Command-line front end: regenerates the tables and figure data, runs the
//! threshold calibration and writes CSV or JSON with residuals against the
//! published values.

pub mod cli;
pub mod output;
pub mod report;
pub mod tables;

pub use cli::{exit_code, run, Cli, Command, Failure};
