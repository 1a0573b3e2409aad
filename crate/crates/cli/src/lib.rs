//! Library half of the `spinlab` binary: text formats, reports and the
//! subcommands, kept here so they can be tested without a process.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::CliError;
pub use report::RunReport;
