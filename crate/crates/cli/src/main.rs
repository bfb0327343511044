mod args;
mod cache;
mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

use args::{Cli, Output};
use cache::Cache;
use cherednik::Error;
use commands::Report;

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn render(report: &Report, mode: Output) -> String {
    match (mode, &report.latex) {
        (Output::Latex, Some(l)) => l.clone(),
        (Output::Text, _) => text(&report.body),
        _ => serde_json::to_string_pretty(&report.body).expect("JSON values always serialize"),
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache_dir.clone().or_else(|| std::env::var_os("CHEREDNIK_CACHE_DIR").map(PathBuf::from))
}

fn compute(cli: &Cli) -> Result<Report, Error> {
    let Some(dir) = cache_dir(cli) else {
        return commands::run(&cli.command);
    };
    let config = serde_json::to_value(&cli.command).expect("arguments serialize");
    let key = cache::key(cli.command.name(), &config);
    let cache = match Cache::open(&dir) {
        Ok(c) => c,
        Err(e) => return Err(Error::InvalidInput(format!("cache directory {}: {e}", dir.display()))),
    };
    if let Some(hit) = cache.get(&key) {
        return Ok(hit);
    }
    let report = commands::run(&cli.command)?;
    if let Err(e) = cache.put(&key, &report) {
        eprintln!("warning: could not write cache entry: {e}");
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match compute(&cli) {
        Ok(report) => {
            println!("{}", render(&report, cli.output));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Err(e @ Error::InvalidInput(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
