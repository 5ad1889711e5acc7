use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use varbesov::config::SuiteName;
use varbesov::{emit, emit_plot, run, ConfigError, Format, SuiteConfig};

/// Runs the verification suites and writes a report.
#[derive(Parser, Debug)]
#[command(name = "varbesov", version)]
struct Args {
    /// JSON suite configuration; defaults apply to missing keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run; repeat to select several. Overrides the config.
    #[arg(long = "suite")]
    suites: Vec<SuiteName>,
    #[arg(long)]
    seed: Option<u64>,
    /// Commutator trials per case.
    #[arg(long)]
    trials: Option<usize>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write the plot series as CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn load(args: &Args) -> Result<SuiteConfig, ConfigError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
                path: path.display().to_string(),
                source,
            })?;
            SuiteConfig::from_json(&text)?
        }
        None => SuiteConfig::default(),
    };
    if !args.suites.is_empty() {
        config.suites = args.suites.clone();
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    config.validate()?;
    Ok(config)
}

fn write(path: Option<&PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match load(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let written = emit(&report, args.format)
        .map_err(|e| e.to_string())
        .and_then(|bytes| write(args.out.as_ref(), &bytes).map_err(|e| e.to_string()))
        .and_then(|()| match &args.plot {
            Some(path) => emit_plot(&report)
                .map_err(|e| e.to_string())
                .and_then(|bytes| std::fs::write(path, bytes).map_err(|e| e.to_string())),
            None => Ok(()),
        });
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    for c in report.failures() {
        eprintln!(
            "FAIL {} value={} bound={} tolerance={}",
            c.id, c.value, c.bound, c.tolerance
        );
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
