//! Experiment runner: executes capture-time and throttling scenarios from
//! spec files, verifies their bounds, and emits CSV rows.
//!
//! Exit codes: 0 all bounds pass, 1 any bound fails, 2 config error.

mod expr;
mod runner;
mod spec;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

use pursuit_core::engine::RunReport;
use pursuit_core::throttling::ThrottleResult;

use runner::{run_scenario, Overrides, ScenarioOutcome};
use spec::ConfigError;

#[derive(Parser)]
#[command(
    name = "pursuit",
    version,
    about = "Runs pursuit-game experiment scenarios and verifies their capture-time bounds"
)]
struct Cli {
    /// Spec file with one or more scenarios
    #[arg(long, value_name = "FILE", conflicts_with = "suite")]
    spec: Option<PathBuf>,

    /// Directory of spec files (.spec/.json), all run together
    #[arg(long, value_name = "DIR")]
    suite: Option<PathBuf>,

    /// Override every scenario's trial count
    #[arg(long, value_name = "N")]
    trials: Option<u64>,

    /// Override every scenario's base seed
    #[arg(long, value_name = "S")]
    seed: Option<u64>,

    /// Worker thread cap (0 uses all cores)
    #[arg(long, value_name = "W", default_value_t = 0)]
    workers: usize,

    /// Write capture rows to this CSV file; throttle scenarios write their
    /// per-k rows next to it as <stem>_throttle.csv
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, ConfigError> {
    let scenarios = match (&cli.spec, &cli.suite) {
        (Some(file), None) => spec::parse_file(file)?,
        (None, Some(dir)) => spec::parse_dir(dir)?,
        _ => {
            return Err(ConfigError(
                "pass exactly one of --spec FILE or --suite DIR".into(),
            ))
        }
    };
    let mut names = BTreeSet::new();
    for s in &scenarios {
        if !names.insert(&s.name) {
            return Err(ConfigError(format!("duplicate scenario name {:?}", s.name)));
        }
    }

    let overrides = Overrides {
        trials: cli.trials,
        seed: cli.seed,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
        .map_err(|e| ConfigError(format!("cannot build worker pool: {e}")))?;
    let mut outcomes: Vec<ScenarioOutcome> = pool.install(|| {
        scenarios
            .par_iter()
            .map(|raw| run_scenario(raw, &overrides))
            .collect::<Result<Vec<_>, _>>()
    })?;
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));

    for outcome in &outcomes {
        println!("{}", outcome.summary);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!(
        "{} scenarios: {} passed, {} failed",
        outcomes.len(),
        passed,
        outcomes.len() - passed
    );

    if let Some(path) = &cli.csv {
        write_csv(path, &outcomes)?;
    }
    Ok(passed == outcomes.len())
}

fn write_csv(path: &PathBuf, outcomes: &[ScenarioOutcome]) -> Result<(), ConfigError> {
    let io_err = |p: &PathBuf, e: std::io::Error| ConfigError(format!("{}: {e}", p.display()));

    let mut capture = String::from(RunReport::CSV_HEADER);
    capture.push('\n');
    for outcome in outcomes {
        for row in &outcome.capture_rows {
            capture.push_str(row);
            capture.push('\n');
        }
    }
    std::fs::write(path, capture).map_err(|e| io_err(path, e))?;

    let throttle_rows: Vec<&String> = outcomes
        .iter()
        .flat_map(|o| o.throttle_rows.iter())
        .collect();
    if !throttle_rows.is_empty() {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("results");
        let throttle_path = path.with_file_name(format!("{stem}_throttle.csv"));
        let mut text = String::from(ThrottleResult::CSV_HEADER);
        text.push('\n');
        for row in throttle_rows {
            text.push_str(row);
            text.push('\n');
        }
        std::fs::write(&throttle_path, text).map_err(|e| io_err(&throttle_path, e))?;
    }
    Ok(())
}
