//! Configuration-driven verification suites for `varbesov-core`.

pub mod config;
pub mod error;
pub mod report;
mod suites;

pub use config::SuiteConfig;
pub use error::{ConfigError, EmitError};
pub use report::{emit, emit_plot, parse_json, Format, SuiteReport};
pub use suites::run;
