//! Command-line front end: argument grammar, state/operator file I/O,
//! figure sweeps, and verification suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod fileio;
pub mod sweep;
pub mod verify;

pub use config::{BoundSelector, GridSpec, OutputFormat};
pub use error::{CliError, CliResult};
pub use sweep::{figure_sweep, FigureId, SweepResult};
pub use verify::{random_suite, scenario_suite, VerifyReport};
