//! Command-line front end for `poscomp`: JSON in, JSON reports out.

pub mod commands;
pub mod report;
pub mod suite;

pub use commands::{run, Cli, VERBS};
pub use report::{Item, Report, Status};
