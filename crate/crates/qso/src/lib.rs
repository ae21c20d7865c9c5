//! File formats, JSON reports, verification suites and the `qso` command line
//! front end for the operators in `qso-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
