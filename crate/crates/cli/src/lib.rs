//! JSON file formats, setup files and command implementations behind the
//! `tomoportrait` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod setup;

pub use error::CliError;

/// Tool name embedded in every report.
pub const TOOL: &str = "tomoportrait";
/// Tool version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable that may set the default search seed.
pub const SEED_ENV: &str = "TOMOPORTRAIT_SEED";
