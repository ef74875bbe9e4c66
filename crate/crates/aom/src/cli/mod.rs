//! Command-line surface: argument parsing, subcommand drivers, and report
//! emission.

mod commands;
mod render;

pub use commands::{run_command, CliError, ExitCode};
pub use render::{emit_report, to_table, OutputFormat};
