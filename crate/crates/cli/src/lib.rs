//! Command-line front end for `mclab-core`: tuple documents, argument
//! parsing and the command implementations behind the `mclab` binary.

pub mod args;
pub mod commands;
pub mod document;
mod error;

pub use error::{CliError, ExitStatus};
