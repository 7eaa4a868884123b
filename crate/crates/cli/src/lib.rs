//! Command-line workbench over `edgereg-core`: a registry of example graphs
//! and ideals, subcommands for every engine capability and scenario checks.

pub mod commands;
pub mod error;
pub mod registry;
pub mod verify;

pub use error::CliError;
