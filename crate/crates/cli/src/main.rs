use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fuzzylos::los::{DEFAULT_AGREEMENT, DEFAULT_EPSILON};
use fuzzylos::AndOperator;
use fuzzylos_cli::{
    cmd_evaluate, cmd_genrules, cmd_infer, cmd_label, cmd_surface, emit, format_classification, load_fis, load_regions,
    parse_grid, CliError, CliResult, DataSource,
};

/// Fuzzy level-of-service classification for (traffic flow, speed) data.
///
/// Without --fis/--regions the built-in 3-lane reference calibration is used.
#[derive(Debug, Parser)]
#[command(name = "fuzzylos", version)]
struct Cli {
    /// Inference system file (.fis)
    #[arg(long, global = true, value_name = "FILE")]
    fis: Option<PathBuf>,
    /// Region model file (.los)
    #[arg(long, global = true, value_name = "FILE")]
    regions: Option<PathBuf>,
    /// Distance from an integer beyond which a raw value counts as a boundary case
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Override the AND operator of the loaded system
    #[arg(long = "and-op", global = true, value_name = "min|product")]
    and_op: Option<AndOperator>,
    /// Output path (stdout when omitted)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Append the region-model level to every row of a measurement CSV
    Label {
        /// CSV with header timestamp,speed_kmh,flow_vph
        input: PathBuf,
    },
    /// Classify a single (flow, speed) pair
    Infer {
        #[arg(long, allow_negative_numbers = true)]
        flow: f64,
        #[arg(long, allow_negative_numbers = true)]
        speed: f64,
        /// Print the raw value with full round-trip precision
        #[arg(long)]
        exact: bool,
    },
    /// Score the system against reference levels; --out PREFIX writes PREFIX.txt and PREFIX.json
    Evaluate {
        /// Measurement CSV, optionally with a los column overriding the region model
        data: Option<PathBuf>,
        /// Generate N synthetic measurements instead of reading a CSV
        #[arg(long, value_name = "N", conflicts_with = "data")]
        synthetic: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Export the raw inference surface as flow_vph,speed_kmh,raw_los
    Surface {
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Rebuild the rule base of --fis from the region model
    Genrules {
        /// Sampling grid as FLOWxSPEED midpoints
        #[arg(long, default_value = "240x160", value_parser = parse_grid)]
        grid: fuzzylos::RuleGrid,
        /// Minimum share of labeled samples that must agree on a level
        #[arg(long, default_value_t = DEFAULT_AGREEMENT)]
        agreement: f64,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    // every referenced configuration must load before any work starts
    let fis = load_fis(cli.fis.as_deref(), cli.and_op)?;
    let regions = load_regions(cli.regions.as_deref())?;
    if !(0.0..0.5).contains(&cli.epsilon) {
        return Err(CliError::User(format!(
            "--epsilon must lie in [0, 0.5), got {}",
            cli.epsilon
        )));
    }
    let out = cli.out.as_deref();

    match cli.command {
        Command::Label { input } => {
            let bytes = cmd_label(&regions, &input)?;
            emit(out, &bytes)
        }
        Command::Infer { flow, speed, exact } => {
            let c = cmd_infer(&fis, flow, speed, cli.epsilon)?;
            emit(out, format!("{}\n", format_classification(&c, exact)).as_bytes())
        }
        Command::Evaluate { data, synthetic, seed } => {
            let source = match (data, synthetic) {
                (Some(path), None) => DataSource::Csv(path),
                (None, Some(n)) => DataSource::Synthetic { n, seed },
                _ => return Err(CliError::User("give a data CSV or --synthetic N".into())),
            };
            let report = cmd_evaluate(&fis, &regions, &source, cli.epsilon)?;
            let text = report.to_text();
            if let Some(prefix) = out {
                let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
                emit(Some(&prefix.with_extension("txt")), text.as_bytes())?;
                emit(Some(&prefix.with_extension("json")), json.as_bytes())?;
            }
            emit(None, text.as_bytes())
        }
        Command::Surface { steps } => {
            let bytes = cmd_surface(&fis, steps)?;
            emit(out, &bytes)
        }
        Command::Genrules { grid, agreement } => {
            let text = cmd_genrules(&regions, &fis, grid, agreement)?;
            emit(out, text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
