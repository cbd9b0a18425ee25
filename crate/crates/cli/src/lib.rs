//! File formats, renderers and twist scenarios behind the `csscluster` binary.

pub mod code_file;
pub mod error;
pub mod pattern_file;
pub mod render;
pub mod scenario;

pub use error::{CliError, CliResult};
