use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcomplexity::dataset::{parse_csv, parse_json};
use qcomplexity::qmetrics::CostKind;
use qcomplexity::qsim::EncodingKind;
use qcomplexity::report::{self, render_summary, ComplexityReport};
use qcomplexity::synthetic::SyntheticSpec;
use qcomplexity::{validate_config, ConfigProfile, Dataset, Error, InputFormat};

const EXIT_METRIC: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_VALIDATION: u8 = 4;
const EXIT_SCHEMA: u8 = 5;

#[derive(Parser)]
#[command(name = "qcomplexity", version, about = "Data-complexity metrics for classical and quantum-embedded datasets")]
struct Cli {
    /// TOML configuration profile.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the seed in the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Basis,
    Angle,
    Amplitude,
}

impl From<MapKind> for EncodingKind {
    fn from(m: MapKind) -> Self {
        match m {
            MapKind::Basis => EncodingKind::Basis,
            MapKind::Angle => EncodingKind::Angle,
            MapKind::Amplitude => EncodingKind::Amplitude,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Cost {
    Global,
    Local,
}

#[derive(clap::Args)]
struct Input {
    /// CSV or JSON dataset. A CSV header row is detected automatically.
    path: Option<PathBuf>,
    /// Use a built-in generator instead of a file (gaussian_blob, parity, signs,
    /// circle, clusters, random_bytes, structured, constant, phase_ring).
    #[arg(long, conflicts_with = "path")]
    synthetic: Option<String>,
    /// Generator size: rows, or bytes for the byte-oriented generators.
    #[arg(long, requires = "synthetic")]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Classical metrics, persistence and the classical composite.
    Profile {
        #[command(flatten)]
        input: Input,
        /// Include per-stage wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Quantum metrics of the embedded rows and the induced composite.
    Qprofile {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        map: MapKind,
        /// Register size; defaults to the smallest that fits.
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long)]
        timings: bool,
    },
    /// Gradient-variance study of the layered ansatz.
    Barren {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Cost::Global)]
        cost: Cost,
    },
    /// Human-readable summary of a saved report.
    Report { path: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } | Error::TooManyQubits(_) => EXIT_CAPACITY,
        Error::InvalidConfig(_) => EXIT_VALIDATION,
        Error::Parse { .. } | Error::Format(_) | Error::Io(_) | Error::EmptyDataset => EXIT_INPUT,
        _ => EXIT_METRIC,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

fn load_config(cli: &Cli) -> Result<ConfigProfile, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read config {}: {e}", p.display())))?;
            ConfigProfile::from_toml_str(&text)?
        }
        None => ConfigProfile::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(validate_config(&cfg)?)
}

fn looks_like_header(text: &str) -> bool {
    text.lines()
        .find(|l| !l.trim().is_empty())
        .map(|l| l.split(',').any(|f| f.trim().parse::<f64>().is_err()))
        .unwrap_or(false)
}

fn read_dataset(path: &Path) -> Result<Dataset, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let mut d = match InputFormat::from_path(path).unwrap_or(InputFormat::Csv) {
        InputFormat::Json => parse_json(&text),
        InputFormat::Csv => parse_csv(&text, looks_like_header(&text)),
    }
    .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    d.source = path.display().to_string();
    Ok(d)
}

fn resolve_input(input: &Input, cfg: &ConfigProfile) -> Result<(Dataset, Option<SyntheticSpec>), Failure> {
    match (&input.path, &input.synthetic) {
        (Some(p), None) => Ok((read_dataset(p)?, None)),
        (None, Some(name)) => {
            let spec = SyntheticSpec::from_name(name, input.n, cfg.seed)
                .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
            let d = spec.generate()?;
            Ok((d, Some(spec)))
        }
        _ => Err(Failure::new(EXIT_INPUT, "give a dataset path or --synthetic")),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, r: &ComplexityReport) -> String {
    match cli.format {
        Format::Json => r.to_json(),
        Format::Csv => r.to_csv(),
    }
}

/// Writes the report; a report carrying metric errors still exits nonzero.
fn finish(cli: &Cli, r: &ComplexityReport) -> Result<(), Failure> {
    emit(cli, &render(cli, r))?;
    if r.is_complete() {
        Ok(())
    } else {
        let names: Vec<&str> = r.errors.keys().map(String::as_str).collect();
        Err(Failure::new(EXIT_METRIC, format!("metrics failed: {}", names.join(", "))))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Report { path } => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
            let r = ComplexityReport::from_json(&text)
                .map_err(|e| Failure::new(EXIT_SCHEMA, format!("{}: {e}", path.display())))?;
            emit(cli, &render_summary(&r))
        }
        Command::Profile { input, timings } => {
            let cfg = load_config(cli)?;
            let (d, spec) = resolve_input(input, &cfg)?;
            finish(cli, &report::profile(&d, spec, &cfg, *timings))
        }
        Command::Qprofile {
            input,
            map,
            qubits,
            timings,
        } => {
            let cfg = load_config(cli)?;
            let (d, spec) = resolve_input(input, &cfg)?;
            let r = report::qprofile(&d, spec, (*map).into(), *qubits, &cfg, *timings)?;
            finish(cli, &r)
        }
        Command::Barren {
            n_min,
            n_max,
            depth,
            samples,
            cost,
        } => {
            let cfg = load_config(cli)?;
            let cost = match cost {
                Cost::Global => CostKind::Global,
                Cost::Local => CostKind::Local,
            };
            let r = report::barren(*n_min, *n_max, *depth, *samples, cost, &cfg)?;
            match cli.format {
                Format::Json => emit(cli, &r.to_json()),
                Format::Csv => emit(cli, &r.gradient_study.as_ref().expect("study present").to_csv()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
