//! Command-line front end: argument parsing, thread pool, output files and
//! the run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{self, ConfigError, Experiment};
use crate::csv_out::{emit_csv, CsvError};
use crate::experiments::{self, NumericalError};

pub const EXIT_IO: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "DISPLAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "displab", version, about = "Weighted dispersive-estimate experiments")]
pub struct Cli {
    /// Experiment to run.
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// TOML configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// CSV output path (overrides `output` in the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (falls back to DISPLAB_THREADS, then to all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: String, source: std::io::Error },
    #[error("config error in {path} at {source}")]
    Config { path: String, source: ConfigError },
    #[error("invalid thread count: {0}")]
    Threads(String),
    #[error(transparent)]
    Numerical(#[from] NumericalError),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: CsvError },
    #[error("cannot write manifest {path}: {source}")]
    Manifest { path: String, source: std::io::Error },
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::ReadConfig { .. } | RunError::Config { .. } | RunError::Threads(_) => EXIT_CONFIG,
            RunError::Numerical(_) => EXIT_NUMERICAL,
            RunError::Output { .. } | RunError::Manifest { .. } => EXIT_IO,
        }
    }
}

/// `--threads` wins over the environment value; `None` means rayon's default.
pub fn thread_count(flag: Option<usize>, env: Option<&str>) -> Result<Option<usize>, RunError> {
    let count = match (flag, env) {
        (Some(k), _) => Some(k),
        (None, Some(text)) if !text.trim().is_empty() => Some(
            text.trim()
                .parse::<usize>()
                .map_err(|_| RunError::Threads(format!("{THREADS_ENV}={text:?} is not a positive integer")))?,
        ),
        _ => None,
    };
    match count {
        Some(0) => Err(RunError::Threads("thread count must be at least 1".into())),
        other => Ok(other),
    }
}

/// Path of the manifest written next to the CSV file.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Runs one experiment end to end and returns its manifest.
pub fn execute(cli: &Cli) -> Result<Value, RunError> {
    let path = cli.config.display().to_string();
    let text = fs::read_to_string(&cli.config).map_err(|source| RunError::ReadConfig {
        path: path.clone(),
        source,
    })?;
    let config = config::parse(&text, cli.experiment).map_err(|source| RunError::Config {
        path: path.clone(),
        source,
    })?;
    let env = std::env::var(THREADS_ENV).ok();
    let threads = thread_count(cli.threads, env.as_deref())?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| RunError::Threads(e.to_string()))?;

    let out = cli
        .out
        .clone()
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", cli.experiment)));
    let started = Instant::now();
    let outcome = pool.install(|| experiments::run(&config))?;
    emit_csv(&outcome.table, &out).map_err(|source| RunError::Output {
        path: out.display().to_string(),
        source,
    })?;
    let wall_time = started.elapsed().as_secs_f64();

    let manifest = json!({
        "tool": "displab",
        "version": env!("CARGO_PKG_VERSION"),
        "experiment": cli.experiment.name(),
        "config": path,
        "config_sha256": hex::encode(Sha256::digest(text.as_bytes())),
        "output": out.display().to_string(),
        "rows": outcome.table.rows.len(),
        "threads": pool.current_num_threads(),
        "wall_time_s": wall_time,
        "summary": Value::Object(outcome.summary),
    });
    let manifest_file = manifest_path(&out);
    fs::write(&manifest_file, format!("{manifest}\n")).map_err(|source| RunError::Manifest {
        path: manifest_file.display().to_string(),
        source,
    })?;
    Ok(manifest)
}
