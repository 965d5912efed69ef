//! Command-line front end for the `gsws` solver.
//!
//! Exit status: 0 success, 1 usage error, 2 computation error, 3 failed
//! verification.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use config::{FileConfig, RunConfig};
use output::{json_document, wavefunction_path, Cell, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Compute(anyhow::Error),
}

impl Failure {
    pub fn usage(msg: impl std::fmt::Display) -> Self {
        Failure::Usage(anyhow::anyhow!("{msg}"))
    }

    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(_) => EXIT_COMPUTE,
        }
    }
}

impl From<gsws::Error> for Failure {
    fn from(e: gsws::Error) -> Self {
        match e {
            gsws::Error::InvalidParams(_) => Failure::Usage(e.into()),
            other => Failure::Compute(other.into()),
        }
    }
}

/// Parses `argv` and runs one command; returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            let (Failure::Usage(e) | Failure::Compute(e)) = &f;
            eprintln!("error: {e:#}");
            f.code()
        }
    }
}

fn options_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("options serialize")
}

fn execute(cli: &Cli) -> Result<i32, Failure> {
    let file = match &cli.common.config {
        Some(path) => Some(FileConfig::load(path).map_err(Failure::Usage)?),
        None => None,
    };
    let (name, options) = match &cli.command {
        Command::Potential(a) => ("potential", options_json(a)),
        Command::Scatter(a) => ("scatter", options_json(a)),
        Command::Bound(a) => ("bound", options_json(a)),
        Command::Quasibound(a) => ("quasibound", options_json(a)),
        Command::Resonances(a) => ("resonances", options_json(a)),
        Command::Verify(a) => ("verify", options_json(a)),
    };
    let cfg = config::resolve(name, &cli.common, file.as_ref(), options).map_err(|e| match e.downcast::<gsws::Error>() {
        Ok(g) => Failure::from(g),
        Err(e) => Failure::Usage(e),
    })?;
    let mut code = EXIT_OK;
    let report = match &cli.command {
        Command::Potential(a) => commands::potential(&cfg, a)?,
        Command::Scatter(a) => commands::scatter(&cfg, a)?,
        Command::Bound(a) => commands::bound(&cfg, a)?,
        Command::Quasibound(a) => commands::quasibound(&cfg, a)?,
        Command::Resonances(a) => commands::resonances(&cfg, a)?,
        Command::Verify(a) => {
            let checks = verify::run_suite(
                &cfg.params,
                verify::SuiteOptions {
                    corrupt_theta: a.debug_corrupt_theta,
                },
            )?;
            if checks.iter().any(|c| c.status == verify::Status::Fail) {
                code = EXIT_VERIFY;
            }
            verify_report(&checks)
        }
    };
    match write_report(&cfg, &report) {
        // a closed downstream pipe (e.g. `| head`) is not an error of ours
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(code),
        Err(e) => Err(Failure::Compute(e.into())),
        Ok(()) => Ok(code),
    }
}

fn verify_report(checks: &[verify::Check]) -> Report {
    let mut t = Table::new(["criterion", "check", "status", "measured", "threshold", "detail"]);
    for c in checks {
        t.push(vec![
            usize::from(c.criterion).into(),
            Cell::Text(c.name.clone()),
            Cell::Text(c.status.to_string()),
            c.measured.into(),
            if c.threshold.is_nan() { Cell::Empty } else { c.threshold.into() },
            Cell::Text(c.detail.clone()),
        ]);
    }
    let failed = checks.iter().filter(|c| c.status == verify::Status::Fail).count();
    let mut r = Report::new(t);
    r.notes.push(("failed_checks".into(), failed.to_string()));
    r
}

fn write_report(cfg: &RunConfig, report: &Report) -> std::io::Result<()> {
    let mut header = cfg.header();
    header.extend(report.notes.iter().cloned());
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    match cfg.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &json_document(cfg, report))?;
            writeln!(sink)?;
        }
        Format::Csv => {
            report.rows.write_csv(&header, &mut sink)?;
            if let Some(w) = &report.wavefunctions {
                match &cfg.out {
                    Some(path) => {
                        let mut f = std::io::BufWriter::new(std::fs::File::create(wavefunction_path(path))?);
                        w.write_csv(&header, &mut f)?;
                        f.flush()?;
                    }
                    None => {
                        writeln!(sink)?;
                        w.write_csv(&header, &mut sink)?;
                    }
                }
            }
        }
    }
    sink.flush()
}
