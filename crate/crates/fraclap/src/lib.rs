//! Identity checks, report types and file formats on top of `fraclap-core`.

pub mod cli;
pub mod output;
pub mod report;
pub mod suites;
pub mod verify;

pub use output::{Format, OutputRecord};
pub use report::{CheckReport, Tolerance};
pub use suites::{run_suite, Suite};
