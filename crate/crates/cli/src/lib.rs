//! Configuration, runs and exports behind the `eigshape` command.

pub mod config;
pub mod export;
pub mod run;

use std::path::PathBuf;

pub use config::{load_config, parse_config, ConfigError, Format, RunConfig, Values};
pub use export::{write_outputs, Written};
pub use run::{Column, Subcommand, Table};

/// Exit statuses of the command.
pub mod exit {
    pub const OK: u8 = 0;
    /// Command-line usage errors, as reported by the argument parser.
    pub const USAGE: u8 = 2;
    pub const CONFIG: u8 = 3;
    pub const NUMERICAL: u8 = 4;
    pub const IO: u8 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Library(#[from] eigshape::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Library(e) if e.is_numerical() => exit::NUMERICAL,
            CliError::Library(_) => exit::CONFIG,
            CliError::Io { .. } => exit::IO,
        }
    }
}

/// Computes `sub` and writes its outputs.
pub fn execute(sub: Subcommand, cfg: &RunConfig) -> Result<Written, CliError> {
    let table = sub.compute(cfg)?;
    write_outputs(&table, cfg, sub)
}
