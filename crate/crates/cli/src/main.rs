//! `gbmux`: batch front-end for the multiplexing, balancing, constellation
//! and MDI statistics workbench.

mod commands;
mod config;
mod published;
mod report;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Config;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "gbmux", version, about = "Event multiplexing and constellation workbench for 4D-PAM5 word streams")]
pub struct Cli {
    /// Output format for tables.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for scrambling and sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the per-cell tolerance of numeric comparisons.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Flat key = value file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutDir {
    /// Write each table to DIR/<name>.<ext> instead of stdout.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplexing variants (GCD, E_max, minimum echo durations).
    Variants(OutDir),
    /// Exact big-integer redundancy verdicts and round plans.
    Redundancy(OutDir),
    /// Encode or decode word streams.
    #[command(subcommand)]
    Codec(CodecCmd),
    /// Repeat/reject balancing.
    #[command(subcommand)]
    Balance(BalanceCmd),
    /// Symmetry catalog and repeat effects.
    Symmetries(OutDir),
    /// Coding-gain metrics of 2D-PAM5 selections and ideal two-orbit constellations.
    Gains(OutDir),
    /// Grid sphere surface and ball volume limits.
    Sphere {
        /// Levels per dimension (PAM-M).
        #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u64).range(2..=64))]
        levels: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=16))]
        max_dim: u64,
        #[command(flatten)]
        out: OutDir,
    },
    /// Jump-gain matrix of the coupled two-plane space.
    Cic {
        #[arg(long, default_value_t = 16)]
        views: usize,
        #[command(flatten)]
        out: OutDir,
    },
    /// MDI output power, wobble and change statistics.
    #[command(subcommand)]
    Stats(StatsCmd),
    /// Compare recomputed tables with the embedded published values.
    Report {
        /// Table id such as P1.TII; repeatable.
        #[arg(long = "table", value_name = "ID")]
        tables: Vec<String>,
        /// Every reproducible table plus a summary.
        #[arg(long, conflicts_with = "tables")]
        all: bool,
        /// Exit 1 on any mismatch.
        #[arg(long)]
        strict: bool,
        /// List table ids and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: OutDir,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScrambleArgs {
    /// Send the key streams as all zeros.
    #[arg(long)]
    pub no_scramble: bool,
}

#[derive(Debug, Subcommand)]
pub enum CodecCmd {
    /// Octets (+ events) to a word file (+ event sidecar).
    Encode {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// JSON list of {"word_index", "train_type"} records.
        #[arg(long)]
        events: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Accepted-event sidecar; defaults to <out>.events.json.
        #[arg(long, value_name = "FILE")]
        events_out: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=2))]
        stretch_head: u8,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=2))]
        stretch_tail: u8,
        /// Split the input into payloads of at most N octets.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        burst: Option<u64>,
        #[command(flatten)]
        scramble: ScrambleArgs,
    },
    /// Word file back to octets (+ event sidecar).
    Decode {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        events_out: Option<PathBuf>,
        #[command(flatten)]
        scramble: ScrambleArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum BalanceCmd {
    /// Solve one target and print solution plus verification as JSON.
    Solve {
        #[arg(long)]
        hz: u64,
        #[arg(long, default_value_t = 72)]
        ne: u64,
    },
    /// All published balancing targets against the published rows.
    Table(OutDir),
}

#[derive(Debug, Subcommand)]
pub enum StatsCmd {
    /// The plain 1000BASE-T process.
    Reference(OutDir),
    /// An ideal two-orbit constellation under a jump rule.
    Stellar {
        /// Points per quadrant per page (views = 4 * pts).
        #[arg(long)]
        pts: f64,
        /// static, gj, gj+, g2j, g2j+, d, gj+d, ...
        #[arg(long, default_value = "static")]
        rule: String,
        /// Inner-to-outer orbit radius ratio.
        #[arg(long)]
        ratio: f64,
        /// Sample N transitions instead of solving the chain exactly.
        #[arg(long, value_name = "N")]
        mc_samples: Option<usize>,
        #[command(flatten)]
        out: OutDir,
    },
}

/// Settings after merging the config file under the flags.
#[derive(Debug, Clone)]
pub struct Settings {
    pub format: Format,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
    pub strict: bool,
}

pub enum Failure {
    Usage(String),
    Run(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Run(e)
    }
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("config {}: {e}", p.display())))?;
            Config::parse(&text).map_err(Failure::Usage)?
        }
        None => Config::default(),
    };
    if let Some(t) = cli.tolerance {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tolerance must be a non-negative number, got {t}")));
        }
    }
    Ok(Settings {
        format: cli.format.or(cfg.format).unwrap_or(Format::Csv),
        seed: cli.seed.or(cfg.seed),
        tolerance: cli.tolerance.or(cfg.tolerance),
        out: cfg.out,
        strict: cfg.strict.unwrap_or(false),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = settings(&cli).and_then(|s| commands::run(cli.command, s));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
