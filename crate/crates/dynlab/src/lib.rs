//! Command-line front end and verification suites for `dynlab-core`.

pub mod commands;
pub mod config;
pub mod oracle;
pub mod random;
pub mod report;
pub mod suites;
