//! The `.spec` file format read by the `check` command.

mod doc;
pub mod expr;
mod report;
mod run;

use thiserror::Error;

pub use doc::{parse_element, parse_scalar, parse_spec, CheckSpec, SpecDocument};
pub use report::{render_json, render_text};
pub use run::{run_checks, ReportRecord, RunOptions};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpecError {
    /// 1-based line and column.
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("[{section}]: {msg}")]
    Validation { section: String, msg: String },
}
