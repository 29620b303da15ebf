//! Library side of the `chainloss` command-line tool: graph documents and
//! the command implementations, kept separate from argument parsing so they
//! can be driven in-process.

pub mod commands;
pub mod document;

pub use commands::{CliError, Outcome};
pub use document::GraphDocument;
