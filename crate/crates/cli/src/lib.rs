//! Suite orchestration, configuration, and machine-readable reports for the
//! `projlogic` command-line tool.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{SuiteConfig, SuiteName};
pub use report::{emit_report, parse_report, render_report, CheckRecord, ReportDocument};
pub use suites::run_suite;
