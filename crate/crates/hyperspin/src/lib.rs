//! Sweeps, figure presets, CSV/JSON output and the command-line front end
//! for [`hyperspin_core`].
//!
//! ```
//! use hyperspin::{emit, run_preset, FigurePreset, Format};
//!
//! let result = run_preset(FigurePreset::M08).unwrap();
//! assert_eq!(result.records.len(), 501);
//! let mut csv = Vec::new();
//! emit(&result, Format::Csv, &mut csv).unwrap();
//! assert_eq!(csv.iter().filter(|&&b| b == b'\n').count(), 502);
//! ```

pub mod check;
pub mod cli;
pub mod emit;
pub mod grid;
pub mod preset;
pub mod sweep;

use thiserror::Error;

pub use check::{run_checks, CheckReport, SuiteReport};
pub use emit::{emit, Format, Row, CSV_HEADER};
pub use grid::{GridPoint, Progression, SweepGrid};
pub use preset::{figure_preset, FigurePreset, Measure, MeasureSelector};
pub use sweep::{evaluate_point, run_preset, run_sweep, run_sweep_with, Metadata, PointError, SweepResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("at {point}: {source}")]
    Point { point: GridPoint, source: PointError },
    #[error("thread pool: {0}")]
    Pool(String),
}
