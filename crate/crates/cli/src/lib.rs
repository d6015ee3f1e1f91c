//! The `qthermo` command-line runner.
//!
//! Exit codes: 0 success, 2 configuration error, 3 physics invariant
//! violated (the report is still written), 4 I/O error.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use config::{format_name, Format, Invocation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Help or version text; not an error.
    Info(String),
    Config(String),
    Invariant(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Config(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Info(s) => f.write_str(s),
            CliError::Config(s) => write!(f, "config error: {s}"),
            CliError::Invariant(s) => write!(f, "invariant violated: {s}"),
            CliError::Io(s) => write!(f, "I/O error: {s}"),
        }
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match config::parse_config(args).and_then(|inv| execute_and_write(&inv)) {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("qthermo: {e}");
            e.exit_code()
        }
    }
}

/// The echoed configuration, including the output format.
pub fn echo(inv: &Invocation) -> Vec<(&'static str, String)> {
    let mut echo = inv.config.echo();
    echo.push(("format", format_name(inv.io.format).to_string()));
    echo
}

pub fn execute_and_write(inv: &Invocation) -> Result<(), CliError> {
    write_outcome(inv, &commands::execute(inv)?)
}

/// Writes the report (and trajectory dump), then turns the first recorded
/// violation into an error.
pub fn write_outcome(inv: &Invocation, outcome: &output::Outcome) -> Result<(), CliError> {
    let command = inv.config.command();
    let echo = echo(inv);
    let text = match inv.io.format {
        Format::Json => output::json_document(command, &echo, outcome),
        Format::Csv => output::csv_document(command, &echo, outcome),
    };
    match &inv.io.output {
        Some(path) => output::write_atomic(path, text.as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?,
    }
    if let (Some(path), Some(traj)) = (&inv.io.dump_trajectory, &outcome.trajectory) {
        output::write_atomic(path, output::trajectory_csv(traj).as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    match outcome.violations.first() {
        Some(first) => Err(CliError::Invariant(first.clone())),
        None => Ok(()),
    }
}
