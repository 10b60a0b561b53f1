//! `crossratio --job job.json [--out report.json] [--seed N] [--threads N]`
//!
//! Runs one verification job and writes a JSON report. Exit status is 0 when
//! the job passes, 1 when it fails or a module rejects its input, and 2 when
//! the job itself cannot be read or parsed.

mod commands;
mod job;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use crossratio::Error;

#[derive(Parser, Debug)]
#[command(name = "crossratio", version, about = "Exact cross-ratio, cocycle and coarse-geometry checks")]
struct Args {
    /// Job file (JSON object with a "cmd" field).
    #[arg(long)]
    job: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random fixtures; overrides a "seed" in the job.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the parallel checks.
    #[arg(long)]
    threads: Option<usize>,
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

fn run(args: &Args) -> (Value, u8) {
    let start = Instant::now();
    let elapsed = |start: Instant| Value::String(start.elapsed().as_millis().to_string());
    let mut cmd = Value::Null;
    let outcome = std::fs::read_to_string(&args.job)
        .map_err(|e| Error::Parse(format!("{}: {e}", args.job.display())))
        .and_then(|text| job::split(&text))
        .and_then(|(name, seed, params)| {
            cmd = Value::String(name.clone());
            let ctx = job::Ctx {
                dir: job::job_dir(&args.job),
                seed: args.seed.or(seed),
            };
            commands::run(&ctx, &name, params)
        });
    match outcome {
        Ok(r) => {
            let report = json!({
                "cmd": cmd,
                "pass": r.pass,
                "counts": r.counts,
                "witnesses": r.witnesses,
                "result": r.result,
                "wall_time_ms": elapsed(start),
            });
            (report, if r.pass { 0 } else { 1 })
        }
        Err(e) => {
            let status = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
            let report = json!({
                "cmd": cmd,
                "pass": false,
                "error": { "kind": error_kind(&e), "message": e.to_string() },
                "wall_time_ms": elapsed(start),
            });
            (report, status)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("crossratio: {e}");
            return ExitCode::from(2);
        }
    }
    let (report, status) = run(&args);
    if let Some(err) = report.get("error") {
        eprintln!("crossratio: {}", err["message"].as_str().unwrap_or_default());
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let written = match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("crossratio: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(status)
}
