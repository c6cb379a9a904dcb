use std::fmt;

use super::{LosError, LosLevel, LosRegionModel};
use crate::fis::{FuzzyVariable, Interval, Rule};

pub const DEFAULT_AGREEMENT: f64 = 0.9;

/// Sampling resolution for rule generation. Samples sit at cell midpoints,
/// `lo + (i + 0.5) * span / steps`, so they never land on a region edge
/// that is a multiple of the cell width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleGrid {
    pub flow_steps: usize,
    pub speed_steps: usize,
}

impl Default for RuleGrid {
    fn default() -> Self {
        Self {
            flow_steps: 240,
            speed_steps: 160,
        }
    }
}

/// A term pair whose labeled samples do not agree on one level.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleConflict {
    pub flow_term: String,
    pub speed_term: String,
    /// Labeled sample counts per level, index 0 = level 1.
    pub counts: [usize; 6],
}

impl fmt::Display for RuleConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) samples per level:", self.flow_term, self.speed_term)?;
        for (level, n) in LosLevel::all().zip(self.counts) {
            if n > 0 {
                write!(f, " {level}={n}")?;
            }
        }
        Ok(())
    }
}

fn midpoints(domain: Interval, steps: usize) -> Vec<f64> {
    let width = domain.span() / steps as f64;
    (0..steps).map(|i| domain.lo() + (i as f64 + 0.5) * width).collect()
}

/// Derives one rule per (flow term, speed term) pair from the region model.
///
/// For each pair the grid is restricted to points where both memberships are
/// at least 0.5. If at least `agreement` of the region-labeled samples there
/// share one level, the pair gets a rule with that level as its consequent.
/// Pairs without labeled samples get no rule and become anomaly zones. Any
/// pair below the agreement threshold fails the whole generation.
///
/// Rules come out flow-term major, in term declaration order.
pub fn generate_rules(
    model: &LosRegionModel,
    flow_var: &FuzzyVariable,
    speed_var: &FuzzyVariable,
    grid: RuleGrid,
    agreement: f64,
) -> Result<Vec<Rule>, LosError> {
    if !(agreement > 0.5 && agreement <= 1.0) {
        return Err(LosError::InvalidAgreement(agreement));
    }
    if grid.flow_steps == 0 || grid.speed_steps == 0 {
        return Err(LosError::InvalidGrid);
    }
    let flows = midpoints(flow_var.domain(), grid.flow_steps);
    let speeds = midpoints(speed_var.domain(), grid.speed_steps);

    // labels[i][j] for flows[i], speeds[j]; points outside the model domain
    // count as unlabeled
    let labels: Vec<Vec<Option<LosLevel>>> = flows
        .iter()
        .map(|&f| {
            speeds
                .iter()
                .map(|&s| model.oracle_label(f, s).ok().flatten())
                .collect()
        })
        .collect();

    let mut rules = Vec::new();
    let mut conflicts = Vec::new();
    for ft in flow_var.terms() {
        let rows: Vec<usize> = (0..flows.len()).filter(|&i| ft.mf.degree(flows[i]) >= 0.5).collect();
        for st in speed_var.terms() {
            let cols: Vec<usize> = (0..speeds.len()).filter(|&j| st.mf.degree(speeds[j]) >= 0.5).collect();
            let mut counts = [0usize; 6];
            for &i in &rows {
                for &j in &cols {
                    if let Some(level) = labels[i][j] {
                        counts[level.index()] += 1;
                    }
                }
            }
            let labeled: usize = counts.iter().sum();
            if labeled == 0 {
                continue;
            }
            let (best, &n) = counts
                .iter()
                .enumerate()
                .max_by_key(|&(i, n)| (n, std::cmp::Reverse(i)))
                .expect("six levels");
            if (n as f64) < agreement * labeled as f64 {
                conflicts.push(RuleConflict {
                    flow_term: ft.name.clone(),
                    speed_term: st.name.clone(),
                    counts,
                });
                continue;
            }
            rules.push(Rule::pair(
                (flow_var.name(), &ft.name),
                (speed_var.name(), &st.name),
                (best + 1) as f64,
            ));
        }
    }
    if conflicts.is_empty() {
        Ok(rules)
    } else {
        Err(LosError::Conflict(conflicts))
    }
}
