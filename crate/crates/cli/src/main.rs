//! `lgi-decay`: amplitude dumps, LGI scans, figure presets and oracle checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod figure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Failure;
use config::{RawConfig, RunConfig, KEYS};
use figure::FigurePreset;

const THREADS_ENV: &str = "LGI_DECAY_THREADS";

#[derive(Parser)]
#[command(name = "lgi-decay", version, about, after_help = key_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Flat key=value config file
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Per-key overrides, `--key value`
    #[arg(
        trailing_var_arg = true,
        allow_hyphen_values = true,
        value_name = "--KEY VALUE"
    )]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate G(t) to amplitude.csv
    Amplitude(Common),
    /// Scan the LGI witness over tau to lgi_scan.csv
    Lgi(Common),
    /// Reproduce a figure preset (fig1, fig2, fig3)
    Figure {
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the analytic solution with a discretized bath
    OracleCheck(Common),
}

fn key_help() -> String {
    let mut s = String::from("Config keys (file `key=value` or `--key value`):\n");
    for (key, default, what) in KEYS {
        s.push_str(&format!("  {key:<15} {what} [default: {default}]\n"));
    }
    s.push_str(&format!("\nSet {THREADS_ENV} to cap the worker thread count."));
    s
}

fn load(common: &Common) -> Result<RunConfig, Failure> {
    let mut raw = RawConfig::default();
    if let Some(path) = &common.config {
        raw.merge_file(path)?;
    }
    raw.merge_args(&common.overrides)?;
    if let Some(out) = &common.out {
        raw.set("out", &out.to_string_lossy())?;
    }
    Ok(raw.build()?)
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize =
        value.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::Config(format!("{THREADS_ENV} must be a positive integer, got `{value}`"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Config(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    match cli.command {
        Command::Amplitude(c) => commands::amplitude(&load(&c)?),
        Command::Lgi(c) => commands::lgi(&load(&c)?),
        Command::Figure { id, common } => {
            let preset: FigurePreset = id.parse().map_err(Failure::Config)?;
            commands::figure(&load(&common)?, &preset)
        }
        Command::OracleCheck(c) => commands::oracle_check(&load(&c)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
