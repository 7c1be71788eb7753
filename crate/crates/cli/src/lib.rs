//! The `freeavg` command line: file formats, seeded law suites and the
//! subcommands built on `freeavg-core`.

pub mod commands;
pub mod error;
pub mod formats;
pub mod suites;

pub use commands::run;
pub use error::CliError;
pub use suites::{Report, Suite, SuiteConfig};
