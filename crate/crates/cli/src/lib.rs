//! Batch verification front end for `qdet-core`.

#![allow(clippy::result_large_err)]

pub mod cache;
pub mod config;
pub mod parse;
pub mod report;
pub mod suites;

use qdet_core::factor::FactorError;
use qdet_core::gamma::GammaError;
use qdet_core::minors::MinorError;
use thiserror::Error;

pub use config::{parse_suites, QMode, Suite, WorkbenchConfig};
pub use parse::{parse_expression, parse_gamma, ParseError};
pub use report::{emit_report, render_report, SuiteReport};
pub use suites::run_suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("suite {suite}: {message}")]
    Suite { suite: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
