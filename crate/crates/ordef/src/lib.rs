//! Batch front end for `ordef-core`: JSON problem files in, JSON reports out,
//! plus the verification suites behind `ordef verify`.

pub mod error;
pub mod pretty;
pub mod problem;
pub mod report;
pub mod suites;

pub use error::CliError;
