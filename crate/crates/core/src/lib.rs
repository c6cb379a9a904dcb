//! Fuzzy level-of-service toolkit.
//!
//! Labels (traffic flow, speed) measurements with a level of service from 1
//! (free flow) to 6 (congested) using a zeroth-order Takagi-Sugeno inference
//! system, checks the result against a rectangle-region ground truth, and
//! flags inputs that no rule covers.
//!
//! - [`fis`]: the inference engine.
//! - [`dsl`]: the `.fis` text format.
//! - [`los`]: level-of-service semantics, region model and rule generation.
//! - [`pipeline`]: CSV ingestion, synthetic data, evaluation, surface export.

pub mod dsl;
pub mod fis;
pub mod los;
pub mod pipeline;

pub mod defaults;

pub use dsl::{parse_fis, serialize, DslError, FisDocument, ParseError};
pub use fis::{AndOperator, FisError, FuzzyVariable, InferenceResult, Interval, Rule, SugenoFis, TrapezoidMF};
pub use los::{classify, generate_rules, Classification, LosError, LosLabel, LosLevel, LosRegionModel, RuleGrid};
pub use pipeline::{
    evaluate, export_surface, generate_synthetic, ingest, EvaluationReport, Measurement, PipelineError,
};
