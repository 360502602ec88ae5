//! Command-line front end for the `spinsq-core` simulator: figure presets,
//! JSON-configured sweeps, CSV/JSON output and the oracle self-check.

pub mod angle;
pub mod commands;
pub mod config;
pub mod error;
pub mod presets;
pub mod selfcheck;
pub mod table;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
