use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use careerpath_core::{
    dataset_stats, load_dataset, suggest, Dataset, DatasetError, Education, EngineConfig, Query,
    SuggestionList,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::response::SuggestResponse;
use crate::server::{self, ServiceConfig, DEFAULT_PORT};

/// Suggest education paths towards a career goal.
#[derive(Debug, Parser)]
#[command(name = "careerpath", version)]
pub struct Cli {
    /// Log filter, e.g. `warn`, `info`, `careerpath=debug`
    #[arg(long, global = true, default_value = "warn", env = "CAREERPATH_LOG")]
    pub log_level: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Suggest education paths for a goal
    Suggest(SuggestArgs),
    /// Print dataset statistics and row warnings
    Stats(DataArgs),
    /// Run the HTTP API
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Career dataset CSV
    #[arg(long, env = "CAREERPATH_DATA")]
    pub data: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EducationArg {
    #[value(name = "high_school")]
    HighSchool,
    #[value(name = "bachelors")]
    Bachelors,
}

impl From<EducationArg> for Education {
    fn from(arg: EducationArg) -> Self {
        match arg {
            EducationArg::HighSchool => Education::HighSchool,
            EducationArg::Bachelors => Education::Bachelors,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Simple-ratio score a work position must exceed
    #[arg(long, default_value_t = careerpath_core::engine::DEFAULT_SIMPLE_THRESHOLD, value_parser = parse_percent)]
    pub threshold_simple: f64,

    /// Partial-ratio score a work position must exceed when no simple match exists
    #[arg(long, default_value_t = careerpath_core::engine::DEFAULT_PARTIAL_THRESHOLD, value_parser = parse_percent)]
    pub threshold_partial: f64,
}

#[derive(Debug, Args)]
pub struct SuggestArgs {
    #[command(flatten)]
    pub data: DataArgs,

    /// Career goal, e.g. "Software Engineer"
    #[arg(long)]
    pub goal: String,

    /// Current education
    #[arg(long, value_enum)]
    pub education: EducationArg,

    /// Maximum number of suggestions
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: Option<u64>,

    #[command(flatten)]
    pub thresholds: ThresholdArgs,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[arg(long, env = "CAREERPATH_PORT", default_value_t = DEFAULT_PORT)]
    pub port: u16,

    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

fn parse_percent(raw: &str) -> Result<f64, String> {
    let value: f64 = raw
        .parse()
        .map_err(|_| format!("{raw:?} is not a number"))?;
    if (0.0..=100.0).contains(&value) {
        Ok(value)
    } else {
        Err(format!("{value} is outside [0, 100]"))
    }
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn open_dataset(path: &Path) -> Result<Dataset, DatasetError> {
    let dataset = load_dataset(File::open(path)?)?;
    tracing::info!(
        records = dataset.len(),
        rejected = dataset.rejected_count(),
        "loaded {}",
        path.display()
    );
    Ok(dataset)
}

fn load_or_report(path: &Path) -> Result<Dataset, ExitCode> {
    open_dataset(path).map_err(|err| {
        eprintln!("error: cannot load dataset {}: {err}", path.display());
        ExitCode::from(EXIT_FAILURE)
    })
}

pub fn write_text(out: &mut impl Write, query: &Query, list: &SuggestionList) -> io::Result<()> {
    if list.is_empty() {
        return writeln!(
            out,
            "no suggestions for {:?} ({})",
            query.goal(),
            query.education().display_name()
        );
    }
    for (rank, s) in list.iter().enumerate() {
        writeln!(
            out,
            "{}. {}  [{}, {}]",
            rank + 1,
            s.rendered,
            s.score,
            s.match_kind
        )?;
    }
    Ok(())
}

fn run_suggest(args: SuggestArgs) -> ExitCode {
    let query = match Query::new(args.goal, args.education.into()) {
        Ok(query) => query,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let config = EngineConfig {
        simple_threshold: args.thresholds.threshold_simple,
        partial_threshold: args.thresholds.threshold_partial,
        limit: args.limit.map(|n| n as usize),
    };
    let dataset = match load_or_report(&args.data.data) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let list = match suggest(&query, &dataset, &config) {
        Ok(list) => list,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let mut stdout = io::stdout().lock();
    let written = match args.format {
        OutputFormat::Text => write_text(&mut stdout, &query, &list),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut stdout, &SuggestResponse::new(&query, &list))
                .map_err(io::Error::from)
                .and_then(|_| writeln!(stdout))
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run_stats(args: DataArgs) -> ExitCode {
    let dataset = match load_or_report(&args.data) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let stats = dataset_stats(&dataset);
    println!("records: {}", stats.records);
    println!("bachelors: {}", stats.bachelors);
    println!("masters: {}", stats.masters);
    println!("doctoral: {}", stats.doctoral);
    println!("distinct positions: {}", stats.distinct_positions);
    println!("rejected: {}", stats.rejected);
    for warning in dataset.warnings() {
        println!("warning: {warning}");
    }
    ExitCode::SUCCESS
}

fn run_serve(args: ServeArgs, log_level: String) -> ExitCode {
    let dataset = match load_or_report(&args.data.data) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let config = ServiceConfig {
        data_path: args.data.data,
        port: args.port,
        engine: EngineConfig {
            simple_threshold: args.thresholds.threshold_simple,
            partial_threshold: args.thresholds.threshold_partial,
            limit: None,
        },
        log_level,
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(err) => {
            eprintln!("error: cannot start runtime: {err}");
            return ExitCode::from(EXIT_FAILURE);
        }
    };
    match runtime.block_on(server::serve(config, dataset)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn init_logging(filter: &str) {
    let filter = tracing_subscriber::EnvFilter::try_new(filter)
        .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("warn"));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(io::stderr)
        .try_init();
}

pub fn run(cli: Cli) -> ExitCode {
    init_logging(&cli.log_level);
    match cli.command {
        Command::Suggest(args) => run_suggest(args),
        Command::Stats(args) => run_stats(args),
        Command::Serve(args) => run_serve(args, cli.log_level),
    }
}
