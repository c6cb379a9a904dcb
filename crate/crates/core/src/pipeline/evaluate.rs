use std::fmt::{self, Write as _};

use serde::Serialize;

use super::{Measurement, PipelineError};
use crate::fis::SugenoFis;
use crate::los::{classify, LosLabel, LosLevel, LosRegionModel};

/// Labeled point that fired no rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlaggedPoint {
    pub index: usize,
    pub timestamp: String,
    pub flow_vph: f64,
    pub speed_kmh: f64,
    pub reference: LosLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointError {
    pub index: usize,
    pub timestamp: String,
    pub message: String,
}

/// Outcome of comparing classifications against reference levels.
///
/// `total` counts labeled points that did not classify as anomalies; it is
/// the accuracy denominator. `confusion[r][p]` counts those points with
/// reference level `r + 1` and predicted level `p + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub points: usize,
    pub unlabeled: usize,
    pub anomalies: usize,
    pub total: usize,
    pub mismatches: usize,
    pub boundary_cases: usize,
    pub confusion: [[usize; 6]; 6],
    pub flagged: Vec<FlaggedPoint>,
    pub errors: Vec<PointError>,
}

impl EvaluationReport {
    pub fn correct(&self) -> usize {
        self.total - self.mismatches
    }

    /// `(total - mismatches) / total`, or `None` when nothing was evaluated.
    pub fn accuracy(&self) -> Option<f64> {
        (self.total > 0).then(|| self.correct() as f64 / self.total as f64)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points          {}", self.points)?;
        writeln!(f, "unlabeled       {}", self.unlabeled)?;
        writeln!(f, "errors          {}", self.errors.len())?;
        writeln!(f, "anomalies       {}", self.anomalies)?;
        writeln!(f, "evaluated       {}", self.total)?;
        writeln!(f, "mismatches      {}", self.mismatches)?;
        writeln!(f, "boundary cases  {}", self.boundary_cases)?;
        match self.accuracy() {
            Some(a) => writeln!(f, "accuracy        {:.4} ({}/{})", a, self.correct(), self.total)?,
            None => writeln!(f, "accuracy        n/a")?,
        }
        writeln!(f)?;
        writeln!(f, "confusion (rows: reference, columns: predicted)")?;
        let mut header = String::from("     ");
        for level in LosLevel::all() {
            let _ = write!(header, "{:>7}", level.to_string());
        }
        writeln!(f, "{header}")?;
        for (i, row) in self.confusion.iter().enumerate() {
            write!(f, "{:>5}", i + 1)?;
            for n in row {
                write!(f, "{n:>7}")?;
            }
            writeln!(f)?;
        }
        for p in &self.flagged {
            writeln!(
                f,
                "anomaly #{} {} flow={} speed={} reference={}",
                p.index, p.timestamp, p.flow_vph, p.speed_kmh, p.reference
            )?;
        }
        for e in &self.errors {
            writeln!(f, "error #{} {}: {}", e.index, e.timestamp, e.message)?;
        }
        Ok(())
    }
}

/// Classifies every measurement and scores it against its reference level:
/// the measurement's own `label` if present, the region oracle otherwise.
///
/// Per-point failures (for instance values outside the domains) land in the
/// report's `errors` instead of aborting the run.
pub fn evaluate(
    fis: &SugenoFis,
    model: &LosRegionModel,
    data: &[Measurement],
    epsilon: f64,
) -> Result<EvaluationReport, PipelineError> {
    if data.is_empty() {
        return Err(PipelineError::NoData);
    }
    // surface configuration problems once rather than per point
    if fis.inputs().len() != 2 {
        return Err(crate::los::LosError::NotTwoInputs(fis.inputs().len()).into());
    }
    if !(0.0..0.5).contains(&epsilon) {
        return Err(crate::los::LosError::InvalidEpsilon(epsilon).into());
    }

    let mut report = EvaluationReport {
        points: data.len(),
        unlabeled: 0,
        anomalies: 0,
        total: 0,
        mismatches: 0,
        boundary_cases: 0,
        confusion: [[0; 6]; 6],
        flagged: Vec::new(),
        errors: Vec::new(),
    };
    for (index, m) in data.iter().enumerate() {
        let fail = |e: &dyn fmt::Display| PointError {
            index,
            timestamp: m.timestamp.clone(),
            message: e.to_string(),
        };
        let reference = match m.label {
            Some(l) => Some(l),
            None => match model.oracle_label(m.flow_vph, m.speed_kmh) {
                Ok(l) => l,
                Err(e) => {
                    report.errors.push(fail(&e));
                    continue;
                }
            },
        };
        let Some(reference) = reference else {
            report.unlabeled += 1;
            continue;
        };
        let c = match classify(fis, m.flow_vph, m.speed_kmh, epsilon) {
            Ok(c) => c,
            Err(e) => {
                report.errors.push(fail(&e));
                continue;
            }
        };
        match c.label {
            LosLabel::Anomaly => {
                report.anomalies += 1;
                report.flagged.push(FlaggedPoint {
                    index,
                    timestamp: m.timestamp.clone(),
                    flow_vph: m.flow_vph,
                    speed_kmh: m.speed_kmh,
                    reference,
                });
            }
            LosLabel::Level(predicted) => {
                report.total += 1;
                report.confusion[reference.index()][predicted.index()] += 1;
                if predicted != reference {
                    report.mismatches += 1;
                }
                if c.boundary {
                    report.boundary_cases += 1;
                }
            }
        }
    }
    Ok(report)
}
