//! `lgfine` command-line entry point.
//!
//! Exit status: 0 on success, 1 when `--strict` is set and the result is
//! infeasible or violating, 2 on usage or input errors.

mod args;
mod commands;
mod error;
mod format;
mod manifest;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Parser;

use args::Cli;
use error::CliError;
use manifest::RunManifest;

fn configure_threads(threads: Option<usize>) -> Result<usize, CliError> {
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        if let Some(t) = threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
        }
        Ok(rayon::current_num_threads())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(1)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let clock = Instant::now();
    let threads = configure_threads(cli.threads)?;
    let outcome = commands::run(&cli.command, cli.out.as_deref())?;

    match &cli.out {
        Some(path) => write_file(path, &outcome.payload)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.payload.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
    }

    let manifest = RunManifest {
        command_line: std::env::args().collect(),
        tool_version: env!("CARGO_PKG_VERSION"),
        seeds: outcome.seeds,
        threads,
        parallel: cfg!(feature = "parallel"),
        started_unix_seconds: started,
        wall_time_seconds: clock.elapsed().as_secs_f64(),
        output: cli.out.clone(),
        side_files: outcome.side_files,
        strict: cli.strict,
        verdict_ok: outcome.verdict_ok,
        config: &cli.command,
    };
    let text = commands::to_json(&manifest)?;
    match &cli.out {
        Some(path) => {
            let mut name = path.clone().into_os_string();
            name.push(".manifest.json");
            write_file(Path::new(&name), &text)?;
        }
        None => eprint!("{text}"),
    }
    Ok(outcome.verdict_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(ok) if ok || !cli.strict => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
