//! Resolved run configuration: command-line flags over a TOML file over
//! defaults. The zero-data directory can also come from the environment.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use mertens_core::acceptance::ZEROS_DIR_ENV;
use mertens_core::primes::{CheckpointGrid, SweepOptions};
use serde::Deserialize;

use crate::output::Format;

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// Upper end of a prime sweep
    #[arg(long, global = true)]
    pub xmax: Option<u64>,
    /// Search bound for |d| or q
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Fundamental discriminant
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub d: Option<i64>,
    /// Modulus
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Residue class
    #[arg(long, global = true)]
    pub a: Option<u64>,
    /// Directory of *.zeros files [env: MERTENS_ZEROS_DIR]
    #[arg(long, global = true)]
    pub zeros_dir: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Checkpoint grid: default, geometric:<ratio> or linear:<step>
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// TOML file with defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// The TOML file: same keys as the flags, with underscores.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    xmax: Option<u64>,
    bound: Option<u64>,
    d: Option<i64>,
    q: Option<u64>,
    a: Option<u64>,
    zeros_dir: Option<PathBuf>,
    out: Option<PathBuf>,
    format: Option<Format>,
    workers: Option<usize>,
    grid: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub xmax: Option<u64>,
    pub bound: Option<u64>,
    pub d: Option<i64>,
    pub q: Option<u64>,
    pub a: Option<u64>,
    pub zeros_dir: PathBuf,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub grid: CheckpointGrid,
}

/// Bad user input, reported with the precondition exit code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Usage(pub String);

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| Usage(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros");
        let zeros_dir = flags
            .zeros_dir
            .clone()
            .or_else(|| std::env::var_os(ZEROS_DIR_ENV).map(PathBuf::from))
            .or(file.zeros_dir)
            .unwrap_or(bundled);
        let workers = flags
            .workers
            .or(file.workers)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if workers == 0 {
            bail!(Usage("--workers must be at least 1".into()));
        }
        let grid = match flags.grid.as_ref().or(file.grid.as_ref()) {
            Some(spec) => spec.parse().map_err(|e: mertens_core::Error| Usage(e.to_string()))?,
            None => CheckpointGrid::default(),
        };
        let out = flags.out.clone().or(file.out);
        if let Some(path) = &out {
            check_output_path(path)?;
        }
        Ok(Self {
            xmax: flags.xmax.or(file.xmax),
            bound: flags.bound.or(file.bound),
            d: flags.d.or(file.d),
            q: flags.q.or(file.q),
            a: flags.a.or(file.a),
            zeros_dir,
            out,
            format: flags.format.or(file.format).unwrap_or(Format::Csv),
            workers,
            grid,
        })
    }

    pub fn sweep_options(&self) -> SweepOptions {
        SweepOptions {
            workers: self.workers,
            ..SweepOptions::default()
        }
    }

    pub fn require_xmax(&self) -> Result<u64> {
        self.xmax.ok_or_else(|| Usage("--xmax is required".into()).into())
    }

    pub fn require_d(&self) -> Result<i64> {
        self.d.ok_or_else(|| Usage("--d is required".into()).into())
    }

    pub fn require_q(&self) -> Result<u64> {
        self.q.ok_or_else(|| Usage("--q is required".into()).into())
    }

    /// The zero-data directory, which must exist.
    pub fn zeros_dir(&self) -> Result<&Path> {
        if !self.zeros_dir.is_dir() {
            bail!(Usage(format!(
                "zero-data directory {} does not exist (set --zeros-dir or {ZEROS_DIR_ENV})",
                self.zeros_dir.display()
            )));
        }
        Ok(&self.zeros_dir)
    }
}

fn check_output_path(path: &Path) -> Result<()> {
    if path.as_os_str().is_empty() || path.file_name().is_none() || path.is_dir() {
        bail!(Usage(format!("output path {} is not a file path", path.display())));
    }
    // Output is renamed into place, which would replace a device or FIFO.
    if let Ok(meta) = std::fs::symlink_metadata(path) {
        if !meta.file_type().is_file() {
            bail!(Usage(format!("output path {} exists and is not a regular file", path.display())));
        }
    }
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if !parent.is_dir() {
        bail!(Usage(format!(
            "output directory {} does not exist",
            parent.display()
        )));
    }
    Ok(())
}
