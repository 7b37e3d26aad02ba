//! Command-line companion of `ringscat-core`: configuration files, scenario
//! orchestration and CSV/JSON output.

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;
