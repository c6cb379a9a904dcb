use std::io::{Read, Write};

use serde::Serialize;

use super::PipelineError;
use crate::los::LosLevel;

pub const HEADER: [&str; 3] = ["timestamp", "speed_kmh", "flow_vph"];
pub const LABEL_COLUMN: &str = "los";

/// One traffic observation. `label`, when present, comes from an optional
/// `los` column and overrides the region oracle during evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub timestamp: String,
    pub speed_kmh: f64,
    pub flow_vph: f64,
    pub label: Option<LosLevel>,
}

impl Measurement {
    pub fn new(timestamp: impl Into<String>, speed_kmh: f64, flow_vph: f64) -> Self {
        Self {
            timestamp: timestamp.into(),
            speed_kmh,
            flow_vph,
            label: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IngestMode {
    /// Keep valid rows and report the rest.
    #[default]
    Partial,
    /// Fail the whole file if any row is invalid.
    AllOrNothing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowError {
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ingested {
    pub measurements: Vec<Measurement>,
    pub errors: Vec<RowError>,
    /// Data rows seen, excluding the header; equals accepted + rejected.
    pub rows: usize,
    pub has_labels: bool,
}

/// Reads `timestamp,speed_kmh,flow_vph[,los]` CSV.
///
/// Invalid rows are collected with their line numbers; in
/// [`IngestMode::AllOrNothing`] any such row turns the result into
/// [`PipelineError::RejectedRows`].
pub fn ingest<R: Read>(reader: R, mode: IngestMode) -> Result<Ingested, PipelineError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.byte_records();

    let header = match records.next() {
        None => return Err(PipelineError::MissingHeader(String::new())),
        Some(Err(e)) => return Err(PipelineError::MissingHeader(e.to_string())),
        Some(Ok(h)) => h,
    };
    let names: Vec<String> = header.iter().map(|f| String::from_utf8_lossy(f).into_owned()).collect();
    let has_labels = match names.as_slice() {
        [a, b, c] if [a, b, c] == HEADER => false,
        [a, b, c, d] if [a, b, c] == HEADER && d == LABEL_COLUMN => true,
        _ => return Err(PipelineError::MissingHeader(names.join(","))),
    };
    let width = if has_labels { 4 } else { 3 };

    let mut out = Ingested {
        has_labels,
        ..Default::default()
    };
    for record in records {
        out.rows += 1;
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                out.errors.push(RowError {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line());
        match parse_row(&record, width) {
            Ok(m) => out.measurements.push(m),
            Err(message) => out.errors.push(RowError { line, message }),
        }
    }

    if mode == IngestMode::AllOrNothing && !out.errors.is_empty() {
        return Err(PipelineError::RejectedRows(out.errors));
    }
    Ok(out)
}

fn parse_row(record: &csv::ByteRecord, width: usize) -> Result<Measurement, String> {
    if record.len() != width {
        return Err(format!("expected {width} fields, found {}", record.len()));
    }
    let field = |i: usize, name: &str| std::str::from_utf8(&record[i]).map_err(|_| format!("{name}: invalid UTF-8"));
    let timestamp = field(0, "timestamp")?;
    if timestamp.is_empty() {
        return Err("timestamp: empty".into());
    }
    let number = |i: usize, name: &str| -> Result<f64, String> {
        let text = field(i, name)?;
        let v: f64 = text.parse().map_err(|_| format!("{name}: '{text}' is not a number"))?;
        if !v.is_finite() {
            return Err(format!("{name}: '{text}' is not finite"));
        }
        if v < 0.0 {
            return Err(format!("{name}: {text} is negative"));
        }
        Ok(v)
    };
    let speed_kmh = number(1, "speed_kmh")?;
    let flow_vph = number(2, "flow_vph")?;
    let label = if width == 4 {
        match field(3, "los")? {
            "" | "-" => None,
            text => {
                let level = text
                    .parse::<u8>()
                    .ok()
                    .and_then(LosLevel::new)
                    .ok_or_else(|| format!("los: '{text}' is not a level 1-6"))?;
                Some(level)
            }
        }
    } else {
        None
    };
    Ok(Measurement {
        timestamp: timestamp.to_string(),
        speed_kmh,
        flow_vph,
        label,
    })
}

/// Writes measurements back out, with a `los` column when `labels` is set
/// (unlabeled rows get `-`).
pub fn write_measurements<W: Write>(writer: W, data: &[Measurement], labels: bool) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(writer);
    if labels {
        w.write_record(HEADER.iter().chain([&LABEL_COLUMN]))?;
    } else {
        w.write_record(HEADER)?;
    }
    for m in data {
        let speed = m.speed_kmh.to_string();
        let flow = m.flow_vph.to_string();
        if labels {
            let los = m.label.map_or_else(|| "-".to_string(), |l| l.to_string());
            w.write_record([m.timestamp.as_str(), &speed, &flow, &los])?;
        } else {
            w.write_record([m.timestamp.as_str(), &speed, &flow])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Ingested {
        ingest(text.as_bytes(), IngestMode::Partial).unwrap()
    }

    #[test]
    fn valid_row() {
        let got = run("timestamp,speed_kmh,flow_vph\n2023-01-05T08:00:00,62.0,1200\n");
        assert_eq!(
            got.measurements,
            vec![Measurement::new("2023-01-05T08:00:00", 62.0, 1200.0)]
        );
        assert!(got.errors.is_empty());
        assert!(!got.has_labels);
    }

    #[test]
    fn negative_speed_rejected_with_line() {
        let got = run("timestamp,speed_kmh,flow_vph\nt1,50,100\nt2,-5,100\nt3,40,abc\nt4,inf,1\nt5,1\n");
        assert_eq!(got.measurements.len(), 1);
        let lines: Vec<u64> = got.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![3, 4, 5, 6]);
        assert!(got.errors[0].message.contains("negative"));
        assert_eq!(got.rows, 5);
    }

    #[test]
    fn header_only_is_empty() {
        let got = run("timestamp,speed_kmh,flow_vph\n");
        assert!(got.measurements.is_empty() && got.errors.is_empty());
        assert_eq!(got.rows, 0);
    }

    #[test]
    fn missing_header() {
        assert!(matches!(
            ingest("".as_bytes(), IngestMode::Partial),
            Err(PipelineError::MissingHeader(_))
        ));
        assert!(matches!(
            ingest("2023,1,2\n".as_bytes(), IngestMode::Partial),
            Err(PipelineError::MissingHeader(_))
        ));
    }

    #[test]
    fn all_or_nothing() {
        let text = "timestamp,speed_kmh,flow_vph\nt1,50,100\nt2,-5,100\n";
        assert!(matches!(
            ingest(text.as_bytes(), IngestMode::AllOrNothing),
            Err(PipelineError::RejectedRows(e)) if e.len() == 1 && e[0].line == 3
        ));
    }

    #[test]
    fn label_column() {
        let got = run("timestamp,speed_kmh,flow_vph,los\nt1,50,100,3\nt2,50,100,-\nt3,1,1,9\n");
        assert_eq!(got.measurements[0].label, LosLevel::new(3));
        assert_eq!(got.measurements[1].label, None);
        assert_eq!(got.errors.len(), 1);
        assert!(got.has_labels);
    }

    #[test]
    fn write_then_read() {
        let mut m = Measurement::new("t", 12.5, 300.0);
        m.label = LosLevel::new(2);
        let data = vec![m, Measurement::new("u", 0.1, 0.0)];
        let mut buf = Vec::new();
        write_measurements(&mut buf, &data, true).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "timestamp,speed_kmh,flow_vph,los\nt,12.5,300,2\nu,0.1,0,-\n"
        );
        assert_eq!(run(std::str::from_utf8(&buf).unwrap()).measurements, data);
    }
}
