//! `rieszkit <subcommand> --config <path> [--out <dir>] [--threads <n>]`
//!
//! Each subcommand reads the config section of the same name and writes
//! `<out>/<subcommand>.csv`, `<out>/<subcommand>.txt` and a
//! `<out>/<subcommand>.manifest` with the run metadata.

mod commands;
mod config;
mod error;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, ValueEnum};
use log::warn;

use config::{Config, Section};
use error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Coeffs,
    Symbol,
    Bounds,
    Monotonicity,
    Riesz,
    Solve,
    Convergence,
    Stability,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Symbol => "symbol",
            Command::Bounds => "bounds",
            Command::Monotonicity => "monotonicity",
            Command::Riesz => "riesz",
            Command::Solve => "solve",
            Command::Convergence => "convergence",
            Command::Stability => "stability",
        }
    }

    fn run(self, s: &Section, pool: &rayon::ThreadPool) -> CliResult<commands::Output> {
        match self {
            Command::Coeffs => commands::coeffs(s, pool),
            Command::Symbol => commands::symbol(s, pool),
            Command::Bounds => commands::bounds(s, pool),
            Command::Monotonicity => commands::monotonicity(s, pool),
            Command::Riesz => commands::riesz(s, pool),
            Command::Solve => commands::solve_cmd(s, pool),
            Command::Convergence => commands::convergence(s, pool),
            Command::Stability => commands::stability(s, pool),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rieszkit", version, about = "Riesz fractional-derivative benchmarks")]
struct Args {
    /// Which study to run; reads the config section of the same name.
    command: Command,

    /// Config file with `[section]` and `key = value` lines.
    #[arg(long)]
    config: PathBuf,

    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
}

fn write(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run(args: &Args) -> CliResult<()> {
    let text = fs::read_to_string(&args.config).map_err(|source| CliError::Io {
        path: args.config.clone(),
        source,
    })?;
    let cfg = Config::parse(&text)?;
    let section = cfg.section(args.command.name())?;

    let threads = match args.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;

    let started = SystemTime::now();
    let output = args.command.run(section, &pool)?;
    for w in &output.warnings {
        warn!("{w}");
    }

    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;
    let name = args.command.name();
    let mut csv = Vec::new();
    output.csv.write_csv(&mut csv)?;
    let csv_path = args.out.join(format!("{name}.csv"));
    let txt_path = args.out.join(format!("{name}.txt"));
    write(&csv_path, &csv)?;
    write(&txt_path, output.text.as_bytes())?;

    let secs = |t: SystemTime| t.duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64());
    let mut manifest = String::new();
    manifest.push_str(&format!("command = {name}\n"));
    manifest.push_str(&format!("config = {}\n", args.config.display()));
    manifest.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
    manifest.push_str(&format!("threads = {threads}\n"));
    manifest.push_str(&format!("started_unix = {:.3}\n", secs(started)));
    manifest.push_str(&format!(
        "elapsed_seconds = {:.3}\n",
        started.elapsed().map_or(0.0, |d| d.as_secs_f64())
    ));
    manifest.push_str("\n[parameters]\n");
    for (k, v) in section.pairs() {
        manifest.push_str(&format!("{k} = {v}\n"));
    }
    manifest.push_str("\n[outputs]\n");
    manifest.push_str(&format!(
        "{name}.csv = {} rows, {} bytes\n",
        output.csv.rows.len(),
        csv.len()
    ));
    manifest.push_str(&format!("{name}.txt = {} bytes\n", output.text.len()));
    if !output.warnings.is_empty() {
        manifest.push_str("\n[warnings]\n");
        for (i, w) in output.warnings.iter().enumerate() {
            manifest.push_str(&format!("w{} = {w}\n", i + 1));
        }
    }
    write(&args.out.join(format!("{name}.manifest")), manifest.as_bytes())?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Config(_) => eprintln!("error: {}: {e}", args.config.display()),
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
