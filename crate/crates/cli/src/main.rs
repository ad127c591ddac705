//! `mertens`: prime sweeps, mean values, bias constants, zero lists and
//! the acceptance suite from the command line.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CheckFailed, Undecided, Which, ZerosAction};
use config::{Flags, RunConfig, Usage};

#[derive(Parser, Debug)]
#[command(name = "mertens", version, about)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime sums and Mertens errors at every checkpoint up to --xmax
    Scan,
    /// Mean values of the Mertens errors on [2000, --xmax]
    Meanvalues,
    /// Prime sums twisted by the character of --d
    Twisted,
    /// Prime sums in the residue classes modulo --q
    Progressions,
    /// Bias constant of chi_d for --d, or for every |d| <= --bound
    Bchi,
    /// Bias constant of the modulus --q, or of every q <= --bound
    Bq,
    /// Membership tables with bracket columns
    Tables {
        #[arg(value_enum)]
        which: Which,
        /// Compare with the bundled copies of the published tables
        #[arg(long)]
        diff: bool,
    },
    /// Zero-list files
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// Run the acceptance suite
    Check {
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_UNDECIDED: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_CHECK: u8 = 5;

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<Usage>() {
        return EXIT_PRECONDITION;
    }
    if err.is::<Undecided>() {
        return EXIT_UNDECIDED;
    }
    if err.is::<CheckFailed>() {
        return EXIT_CHECK;
    }
    if let Some(e) = err.downcast_ref::<mertens_core::Error>() {
        return match e {
            mertens_core::Error::Precondition(_) | mertens_core::Error::Parse { .. } => EXIT_PRECONDITION,
            mertens_core::Error::InsufficientData(_) => EXIT_UNDECIDED,
            mertens_core::Error::Consistency(_) => EXIT_CHECK,
            mertens_core::Error::Io { .. } => EXIT_IO,
        };
    }
    if err.chain().any(|c| c.is::<std::io::Error>()) {
        return EXIT_IO;
    }
    EXIT_FAILURE
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build_global()
        .ok();
    match &cli.command {
        Command::Scan => commands::scan(&cfg),
        Command::Meanvalues => commands::meanvalues(&cfg),
        Command::Twisted => commands::twisted(&cfg),
        Command::Progressions => commands::progressions(&cfg),
        Command::Bchi => commands::bchi(&cfg),
        Command::Bq => commands::bq(&cfg),
        Command::Tables { which, diff } => commands::tables(&cfg, *which, *diff),
        Command::Zeros { action } => commands::zeros(&cfg, action),
        Command::Check { only } => commands::check(&cfg, only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
