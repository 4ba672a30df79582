//! Command-line front end for the partition, tower and Mellin computations.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit status with a JSON report. Every report carries `"schema": 1`. The
//! status is 0 when every requested check passes, 1 when a check fails (the
//! report then holds a witness) and 2 when the arguments cannot be parsed or
//! describe invalid input.

mod commands;
mod error;
pub mod grammar;
pub mod suite;

pub use commands::{execute, BodiesCommand, Cli, Command, MellinCommand, Report, SymmCommand};
pub use error::CliError;

use clap::Parser;
use serde_json::{json, Value};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

/// Exit status and printed output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 on success, 1 on a failed check, 2 on a parse or input error.
    pub status: i32,
    /// Text for standard output (a JSON document, or help text).
    pub stdout: String,
    /// Diagnostics for standard error.
    pub stderr: String,
}

fn render(mut body: Value) -> String {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut text = serde_json::to_string_pretty(&body).expect("reports serialize");
    text.push('\n');
    text
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: render(json!({ "error": "usage", "detail": text })), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Outcome { status: if report.ok { 0 } else { 1 }, stdout: render(report.body), stderr: String::new() },
        Err(e) => {
            let detail = e.to_string();
            Outcome { status: 2, stdout: render(json!({ "error": "input", "detail": detail })), stderr: format!("error: {detail}\n") }
        }
    }
}
