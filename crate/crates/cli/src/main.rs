mod commands;
mod config;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, Format, RunConfig, UsageError, SCAN_BOUND_VAR};
use unipow::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;
const EXIT_BOUND: u8 = 3;

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded(_) | Error::Overflow(_) => EXIT_BOUND,
        Error::Inconsistency(_) => EXIT_VERIFY_FAILED,
        Error::NotPrime(_)
        | Error::NotPrimePower(_)
        | Error::InvalidArgument(_)
        | Error::Hypothesis(_) => EXIT_USAGE,
    }
}

fn write_report(cfg: &RunConfig, outcome: &commands::Outcome) -> io::Result<()> {
    let sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match cfg.format {
        Format::Csv => outcome.report.write_csv(&mut sink).map_err(io::Error::other)?,
        Format::Json => outcome.report.write_json(&mut sink)?,
    }
    sink.flush()
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
    let scan_bound = std::env::var(SCAN_BOUND_VAR).ok();
    let cfg = match RunConfig::from_cli(cli, scan_bound.as_deref()) {
        Ok(cfg) => cfg,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match commands::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if let Err(e) = write_report(&cfg, &outcome) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}
