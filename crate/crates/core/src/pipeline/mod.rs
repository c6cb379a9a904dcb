//! Offline data path: ingest measurements (or synthesize them from a region
//! model), classify, score against reference levels, and export the raw
//! inference surface.

mod evaluate;
mod ingest;
mod surface;
mod synthetic;

pub use evaluate::{evaluate, EvaluationReport, FlaggedPoint, PointError};
pub use ingest::{ingest, write_measurements, IngestMode, Ingested, Measurement, RowError, HEADER, LABEL_COLUMN};
pub use surface::{export_surface, grid_axis, write_surface_csv, SurfaceCell, SURFACE_HEADER};
pub use synthetic::{generate_synthetic, generate_synthetic_with, SyntheticConfig};

use thiserror::Error;

use crate::fis::FisError;
use crate::los::LosError;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("missing or malformed header (expected timestamp,speed_kmh,flow_vph[,los]): '{0}'")]
    MissingHeader(String),
    #[error("{} invalid row(s), first on line {}: {}", .0.len(), .0[0].line, .0[0].message)]
    RejectedRows(Vec<RowError>),
    #[error("no data")]
    NoData,
    #[error("point count must be positive")]
    InvalidCount,
    #[error("region model has no regions")]
    NoRegions,
    #[error("surface grid needs at least 2 steps per axis")]
    InvalidSteps,
    #[error(transparent)]
    Los(#[from] LosError),
    #[error(transparent)]
    Fis(#[from] FisError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
