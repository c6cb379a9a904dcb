use std::fmt;

use serde::Serialize;

use super::{LosError, LosLevel};
use crate::fis::SugenoFis;

/// Raw outputs within this distance of an integer count as firm.
pub const DEFAULT_EPSILON: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LosLabel {
    Level(LosLevel),
    Anomaly,
}

impl LosLabel {
    pub fn level(self) -> Option<LosLevel> {
        match self {
            LosLabel::Level(l) => Some(l),
            LosLabel::Anomaly => None,
        }
    }
}

impl fmt::Display for LosLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LosLabel::Level(l) => write!(f, "{l}"),
            LosLabel::Anomaly => f.write_str("ANOMALY"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub raw: f64,
    pub label: LosLabel,
    /// The raw value sits between two levels rather than on one.
    pub boundary: bool,
    pub fired_rules: usize,
}

/// `floor(x + 0.5)` clamped to the level range.
pub fn round_half_up(raw: f64) -> LosLevel {
    let r = (raw + 0.5).floor().clamp(1.0, 6.0);
    LosLevel::new(r as u8).expect("clamped to 1..=6")
}

/// Classifies one (flow, speed) pair. The system's first input is traffic
/// flow and its second is speed.
pub fn classify(fis: &SugenoFis, flow: f64, speed: f64, epsilon: f64) -> Result<Classification, LosError> {
    if fis.inputs().len() != 2 {
        return Err(LosError::NotTwoInputs(fis.inputs().len()));
    }
    if !(0.0..0.5).contains(&epsilon) {
        return Err(LosError::InvalidEpsilon(epsilon));
    }
    let result = fis.infer(&[flow, speed])?;
    if result.is_anomaly() {
        return Ok(Classification {
            raw: result.raw,
            label: LosLabel::Anomaly,
            boundary: false,
            fired_rules: 0,
        });
    }
    let raw = result.raw;
    Ok(Classification {
        raw,
        label: LosLabel::Level(round_half_up(raw)),
        boundary: (raw - raw.round()).abs() > epsilon,
        fired_rules: result.fired_rules,
    })
}
