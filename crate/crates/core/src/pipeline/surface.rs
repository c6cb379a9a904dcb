use std::io::Write;

use serde::Serialize;

use super::PipelineError;
use crate::fis::{Interval, SugenoFis};
use crate::los::LosError;

pub const SURFACE_HEADER: [&str; 3] = ["flow_vph", "speed_kmh", "raw_los"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceCell {
    pub flow_vph: f64,
    pub speed_kmh: f64,
    pub raw_los: f64,
}

/// `steps` evenly spaced points covering `domain`, both ends included.
pub fn grid_axis(domain: Interval, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                domain.hi()
            } else {
                domain.lo() + domain.span() * (i as f64) / (last as f64)
            }
        })
        .collect()
}

/// Raw inference output over a `flow_steps x speed_steps` grid, flow-major.
/// Values are not rounded; anomaly zones show up as 0.
pub fn export_surface(
    fis: &SugenoFis,
    flow_steps: usize,
    speed_steps: usize,
) -> Result<Vec<SurfaceCell>, PipelineError> {
    if flow_steps < 2 || speed_steps < 2 {
        return Err(PipelineError::InvalidSteps);
    }
    if fis.inputs().len() != 2 {
        return Err(LosError::NotTwoInputs(fis.inputs().len()).into());
    }
    let flows = grid_axis(fis.inputs()[0].domain(), flow_steps);
    let speeds = grid_axis(fis.inputs()[1].domain(), speed_steps);
    let mut cells = Vec::with_capacity(flow_steps * speed_steps);
    for &flow in &flows {
        for &speed in &speeds {
            let raw = fis.infer(&[flow, speed])?.raw;
            cells.push(SurfaceCell {
                flow_vph: flow,
                speed_kmh: speed,
                raw_los: raw,
            });
        }
    }
    Ok(cells)
}

/// Writes cells as `flow_vph,speed_kmh,raw_los` with shortest round-trip
/// number formatting.
pub fn write_surface_csv<W: Write>(writer: W, cells: &[SurfaceCell]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SURFACE_HEADER)?;
    for c in cells {
        w.write_record([c.flow_vph.to_string(), c.speed_kmh.to_string(), c.raw_los.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_fis;

    const FIS: &str = "variable input F domain 0 10\nmf A trap 0 0 4 6\nvariable input S domain 0 80\nmf B trap 0 0 80 80\nvariable output Y domain 0 6\nrule IF F IS A AND S IS B THEN Y = 2\n";

    #[test]
    fn corners_for_two_by_two() {
        let cells = export_surface(&parse_fis(FIS).unwrap(), 2, 2).unwrap();
        let coords: Vec<_> = cells.iter().map(|c| (c.flow_vph, c.speed_kmh)).collect();
        assert_eq!(coords, vec![(0.0, 0.0), (0.0, 80.0), (10.0, 0.0), (10.0, 80.0)]);
        assert_eq!(cells[0].raw_los, 2.0);
        assert_eq!(cells[3].raw_los, 0.0);
    }

    #[test]
    fn too_few_steps() {
        assert!(matches!(
            export_surface(&parse_fis(FIS).unwrap(), 1, 5),
            Err(PipelineError::InvalidSteps)
        ));
    }

    #[test]
    fn axis_hits_both_ends() {
        let axis = grid_axis(Interval::new(0.0, 6000.0).unwrap(), 50);
        assert_eq!(axis.len(), 50);
        assert_eq!(axis[0], 0.0);
        assert_eq!(axis[49], 6000.0);
    }

    #[test]
    fn csv_format() {
        let mut buf = Vec::new();
        write_surface_csv(&mut buf, &export_surface(&parse_fis(FIS).unwrap(), 2, 2).unwrap()).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "flow_vph,speed_kmh,raw_los\n0,0,2\n0,80,2\n10,0,0\n10,80,0\n"
        );
    }
}
