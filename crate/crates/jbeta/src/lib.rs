//! Scenario catalog, JSON formats, grid searches and the property suite
//! behind the `jbeta` command.

pub mod checks;
pub mod error;
pub mod format;
pub mod report;
pub mod sample;
pub mod scenario;
pub mod search;
pub mod tree;

pub use error::{CliError, CliResult};
