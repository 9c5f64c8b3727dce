//! Front end for `latticeset`: the point-set file format, the commands
//! behind the `latticeset` binary, and the benchmark table.

pub mod bench;
pub mod commands;
mod error;
pub mod pointfile;
pub mod stats;

pub use error::{CliError, ExitStatus};
