//! Level-of-service semantics on top of the inference engine.
//!
//! The region model is the ground truth: disjoint rectangles in
//! (flow, speed) space, each mapped to one level. Rule generation derives a
//! rule base from those rectangles and the input terms, and classification
//! turns a raw inference value into a level, a boundary flag, or an anomaly.

mod classify;
mod regions;
mod rulegen;

pub use classify::{classify, round_half_up, Classification, LosLabel, DEFAULT_EPSILON};
pub use regions::{parse_regions, serialize_regions, LosRegionModel, Rect, Region};
pub use rulegen::{generate_rules, RuleConflict, RuleGrid, DEFAULT_AGREEMENT};

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fis::FisError;

const DESCRIPTIONS: [&str; 6] = [
    "The traffic flow is free.",
    "Traffic flow is almost continuous.",
    "The traffic situation is stable.",
    "The traffic situation is still stable.",
    "The lane capacity is full.",
    "The section is congested.",
];

/// Level of service, 1 (free flow) through 6 (congested).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LosLevel(u8);

impl LosLevel {
    pub const MIN: LosLevel = LosLevel(1);
    pub const MAX: LosLevel = LosLevel(6);

    pub fn new(level: u8) -> Option<Self> {
        (1..=6).contains(&level).then_some(Self(level))
    }

    pub fn all() -> impl Iterator<Item = LosLevel> {
        (1..=6).map(LosLevel)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based index, handy for confusion matrices.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn description(self) -> &'static str {
        DESCRIPTIONS[self.index()]
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl fmt::Display for LosLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for LosLevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LosError {
    #[error(transparent)]
    Fis(#[from] FisError),
    #[error("lane count must be a positive integer")]
    InvalidLanes,
    #[error("region {index} ({level}) is not inside the model domains")]
    RegionOutsideDomain { index: usize, level: LosLevel },
    #[error("regions {first} and {second} overlap")]
    OverlappingRegions { first: usize, second: usize },
    #[error("{axis} {value} lies outside domain [{lo}, {hi}]")]
    OutOfDomain {
        axis: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("level-of-service systems need exactly two inputs (flow, speed), found {0}")]
    NotTwoInputs(usize),
    #[error("boundary epsilon must lie in [0, 0.5), got {0}")]
    InvalidEpsilon(f64),
    #[error("agreement must lie in (0.5, 1], got {0}")]
    InvalidAgreement(f64),
    #[error("grid needs at least one sample per axis")]
    InvalidGrid,
    #[error("conflicting term pairs: {}", .0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "))]
    Conflict(Vec<RuleConflict>),
}
