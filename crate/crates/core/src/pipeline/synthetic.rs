use chrono::{Duration, NaiveDate, NaiveDateTime};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Measurement, PipelineError};
use crate::fis::Interval;
use crate::los::{LosRegionModel, Rect};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    /// Share of points pushed just outside a region edge.
    pub jitter_fraction: f64,
    /// Maximum jitter distance as a fraction of each axis span.
    pub jitter_margin: f64,
    pub start: NaiveDateTime,
    pub cadence_minutes: i64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            jitter_fraction: 0.02,
            jitter_margin: 0.01,
            start: NaiveDate::from_ymd_opt(2023, 1, 2)
                .and_then(|d| d.and_hms_opt(0, 0, 0))
                .expect("valid date"),
            cadence_minutes: 15,
        }
    }
}

/// [`generate_synthetic_with`] using the default configuration.
pub fn generate_synthetic(model: &LosRegionModel, n: usize, seed: u64) -> Result<Vec<Measurement>, PipelineError> {
    generate_synthetic_with(model, n, seed, &SyntheticConfig::default())
}

/// Draws `n` labeled-looking measurements from the region model.
///
/// Points are uniform inside the rectangles, with rectangles picked in
/// proportion to their area. `round(n * jitter_fraction)` of them are then
/// placed just across a randomly chosen rectangle edge that does not lie on
/// the domain boundary. Output is a pure function of the arguments.
pub fn generate_synthetic_with(
    model: &LosRegionModel,
    n: usize,
    seed: u64,
    config: &SyntheticConfig,
) -> Result<Vec<Measurement>, PipelineError> {
    if n == 0 {
        return Err(PipelineError::InvalidCount);
    }
    if model.regions().is_empty() {
        return Err(PipelineError::NoRegions);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let areas: Vec<f64> = model.regions().iter().map(|r| r.rect.area()).collect();
    let pick = WeightedIndex::new(&areas).map_err(|_| PipelineError::NoRegions)?;

    let jittered = ((n as f64) * config.jitter_fraction.clamp(0.0, 1.0)).round() as usize;
    let flow_margin = model.flow_domain().span() * config.jitter_margin;
    let speed_margin = model.speed_domain().span() * config.jitter_margin;

    let mut points: Vec<(f64, f64)> = Vec::with_capacity(n);
    for k in 0..n {
        let rect = model.regions()[pick.sample(&mut rng)].rect;
        let mut flow = uniform(&mut rng, rect.flow);
        let mut speed = uniform(&mut rng, rect.speed);
        if k < jittered {
            let edges = crossable_edges(model, &rect);
            if !edges.is_empty() {
                let edge = edges[rng.random_range(0..edges.len())];
                // (0, margin] below a low edge, [0, margin) past a high edge
                let below = |m: f64, rng: &mut ChaCha8Rng| m * (1.0 - rng.random::<f64>());
                match edge {
                    Edge::FlowLow => flow = rect.flow.lo() - below(flow_margin, &mut rng),
                    Edge::FlowHigh => flow = rect.flow.hi() + flow_margin * rng.random::<f64>(),
                    Edge::SpeedLow => speed = rect.speed.lo() - below(speed_margin, &mut rng),
                    Edge::SpeedHigh => speed = rect.speed.hi() + speed_margin * rng.random::<f64>(),
                }
                flow = flow.clamp(model.flow_domain().lo(), model.flow_domain().hi());
                speed = speed.clamp(model.speed_domain().lo(), model.speed_domain().hi());
            }
        }
        points.push((flow, speed));
    }
    // interleave jittered and interior points
    points.shuffle(&mut rng);

    Ok(points
        .into_iter()
        .enumerate()
        .map(|(i, (flow, speed))| {
            let at = config.start + Duration::minutes(config.cadence_minutes * i as i64);
            Measurement::new(at.format("%Y-%m-%dT%H:%M:%S").to_string(), speed, flow)
        })
        .collect())
}

#[derive(Debug, Clone, Copy)]
enum Edge {
    FlowLow,
    FlowHigh,
    SpeedLow,
    SpeedHigh,
}

fn crossable_edges(model: &LosRegionModel, rect: &Rect) -> Vec<Edge> {
    let (fd, sd) = (model.flow_domain(), model.speed_domain());
    let mut edges = Vec::with_capacity(4);
    if rect.flow.lo() > fd.lo() {
        edges.push(Edge::FlowLow);
    }
    if rect.flow.hi() < fd.hi() {
        edges.push(Edge::FlowHigh);
    }
    if rect.speed.lo() > sd.lo() {
        edges.push(Edge::SpeedLow);
    }
    if rect.speed.hi() < sd.hi() {
        edges.push(Edge::SpeedHigh);
    }
    edges
}

fn uniform(rng: &mut ChaCha8Rng, interval: Interval) -> f64 {
    rng.random_range(interval.lo()..interval.hi())
}
