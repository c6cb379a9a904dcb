//! Subcommand bodies for the `fuzzylos` binary, kept in a library so tests
//! can call them without spawning a process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fuzzylos::defaults::{LEGEROVA_FIS, LEGEROVA_LOS};
use fuzzylos::dsl::{parse_fis, serialize};
use fuzzylos::los::{classify, generate_rules, parse_regions, Classification, LosError, LosLabel, RuleGrid};
use fuzzylos::pipeline::{
    evaluate, export_surface, generate_synthetic, ingest, write_measurements, write_surface_csv, EvaluationReport,
    IngestMode, Measurement, PipelineError,
};
use fuzzylos::{AndOperator, LosRegionModel, SugenoFis};
use thiserror::Error;

/// Failures split by exit code: 2 for bad input or configuration, 1 for
/// anything else.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    User(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Io(e) => CliError::Internal(e.to_string()),
            other => CliError::User(other.to_string()),
        }
    }
}

impl From<LosError> for CliError {
    fn from(e: LosError) -> Self {
        CliError::User(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

/// Loads a `.fis` file, or the shipped reference system when `path` is
/// `None`, then applies an optional AND-operator override.
pub fn load_fis(path: Option<&Path>, and_op: Option<AndOperator>) -> CliResult<SugenoFis> {
    let (name, text) = match path {
        Some(p) => (p.display().to_string(), read_text(p)?),
        None => ("legerova.fis".to_string(), LEGEROVA_FIS.to_string()),
    };
    let fis = parse_fis(&text).map_err(|e| {
        let lines: Vec<String> = e.errors.iter().map(|d| format!("{name}:{d}")).collect();
        CliError::User(lines.join("\n"))
    })?;
    Ok(match and_op {
        Some(op) => fis.with_and_operator(op),
        None => fis,
    })
}

pub fn load_regions(path: Option<&Path>) -> CliResult<LosRegionModel> {
    let (name, text) = match path {
        Some(p) => (p.display().to_string(), read_text(p)?),
        None => ("legerova.los".to_string(), LEGEROVA_LOS.to_string()),
    };
    parse_regions(&text).map_err(|e| {
        let lines: Vec<String> = e.errors.iter().map(|d| format!("{name}:{d}")).collect();
        CliError::User(lines.join("\n"))
    })
}

fn load_csv(path: &Path) -> CliResult<Vec<Measurement>> {
    let file = fs::File::open(path).map_err(|e| CliError::User(format!("{}: {e}", path.display())))?;
    let ingested = ingest(file, IngestMode::AllOrNothing).map_err(|e| match e {
        PipelineError::RejectedRows(rows) => {
            let lines: Vec<String> = rows
                .iter()
                .map(|r| format!("{}:{}: {}", path.display(), r.line, r.message))
                .collect();
            CliError::User(lines.join("\n"))
        }
        other => CliError::User(format!("{}: {other}", path.display())),
    })?;
    Ok(ingested.measurements)
}

/// Writes `bytes` to `out` in one go, or to stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Internal(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

/// Appends the oracle level of every row as a `los` column.
pub fn cmd_label(regions: &LosRegionModel, input: &Path) -> CliResult<Vec<u8>> {
    let mut data = load_csv(input)?;
    for (i, m) in data.iter_mut().enumerate() {
        m.label = regions
            .oracle_label(m.flow_vph, m.speed_kmh)
            .map_err(|e| CliError::User(format!("row {}: {e}", i + 1)))?;
    }
    let mut buf = Vec::new();
    write_measurements(&mut buf, &data, true)?;
    Ok(buf)
}

pub fn cmd_infer(fis: &SugenoFis, flow: f64, speed: f64, epsilon: f64) -> CliResult<Classification> {
    Ok(classify(fis, flow, speed, epsilon)?)
}

/// One-line rendering of a classification. `exact` prints the raw value
/// with round-trip precision instead of three decimals.
pub fn format_classification(c: &Classification, exact: bool) -> String {
    let raw = if exact {
        c.raw.to_string()
    } else {
        format!("{:.3}", c.raw)
    };
    match c.label {
        LosLabel::Anomaly => format!("raw={raw} level=ANOMALY boundary=false anomaly=true"),
        LosLabel::Level(l) => format!("raw={raw} level={l} boundary={} anomaly=false", c.boundary),
    }
}

pub enum DataSource {
    Csv(PathBuf),
    Synthetic { n: usize, seed: u64 },
}

pub fn cmd_evaluate(
    fis: &SugenoFis,
    regions: &LosRegionModel,
    source: &DataSource,
    epsilon: f64,
) -> CliResult<EvaluationReport> {
    let data = match source {
        DataSource::Csv(p) => load_csv(p)?,
        DataSource::Synthetic { n, seed } => {
            if *n == 0 {
                return Err(CliError::User("no data".into()));
            }
            generate_synthetic(regions, *n, *seed)?
        }
    };
    if data.is_empty() {
        return Err(CliError::User("no data".into()));
    }
    Ok(evaluate(fis, regions, &data, epsilon)?)
}

pub fn cmd_surface(fis: &SugenoFis, steps: usize) -> CliResult<Vec<u8>> {
    if steps < 2 {
        return Err(CliError::User("--steps must be at least 2".into()));
    }
    let cells = export_surface(fis, steps, steps)?;
    let mut buf = Vec::new();
    write_surface_csv(&mut buf, &cells)?;
    Ok(buf)
}

/// Regenerates the rule base of `base` from the region model and returns the
/// complete `.fis` text. Existing rules in `base` are discarded.
pub fn cmd_genrules(regions: &LosRegionModel, base: &SugenoFis, grid: RuleGrid, agreement: f64) -> CliResult<String> {
    let [flow, speed] = base.inputs() else {
        return Err(LosError::NotTwoInputs(base.inputs().len()).into());
    };
    let rules = generate_rules(regions, flow, speed, grid, agreement)?;
    let fis = base.with_rules(rules).map_err(|e| CliError::User(e.to_string()))?;
    Ok(serialize(&fis))
}

/// Parses `FLOWxSPEED`, e.g. `240x160`.
pub fn parse_grid(s: &str) -> Result<RuleGrid, String> {
    let (f, sp) = s
        .split_once('x')
        .ok_or_else(|| format!("expected FLOWxSPEED, got '{s}'"))?;
    let flow_steps: usize = f.parse().map_err(|_| format!("bad flow steps '{f}'"))?;
    let speed_steps: usize = sp.parse().map_err(|_| format!("bad speed steps '{sp}'"))?;
    if flow_steps == 0 || speed_steps == 0 {
        return Err("grid steps must be positive".into());
    }
    Ok(RuleGrid {
        flow_steps,
        speed_steps,
    })
}
