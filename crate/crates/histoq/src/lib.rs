//! Command-line front end for `histoq-core`: model selection, parameter
//! sweeps, classification of model files and deterministic CSV / JSON
//! reports.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod model;
pub mod report;

pub use cli::{Cli, Format};
pub use error::{CliError, CliResult};
pub use report::Report;

/// Renders a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}
