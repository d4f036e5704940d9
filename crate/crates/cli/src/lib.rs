//! Command-line front end: argument parsing, dispatch, exit codes, output
//! formats and run records.
//!
//! Exit codes: 0 success, 1 counterexample or replay mismatch, 2 input
//! error, 3 feasibility or budget error.

pub mod args;
pub mod commands;
pub mod record;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use commands::{execute, Inputs};
use record::{digest, replay_report, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FEASIBILITY: i32 = 3;

/// What a run printed and how it ended.
#[derive(Clone, Debug)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// The JSON payload, when the command got far enough to produce one.
    pub payload: Option<Value>,
    /// Where the run record was written, if one was requested.
    pub record: Option<std::path::PathBuf>,
}

/// Exit code for a finished report.
pub fn outcome_code(payload: &Value) -> i32 {
    let flagged = payload.get("status").and_then(Value::as_str) == Some("counterexamples")
        || payload.get("suspect_implementation").and_then(Value::as_bool) == Some(true)
        || match payload.get("violations") {
            Some(Value::Array(v)) => !v.is_empty(),
            Some(Value::Number(n)) => n.as_u64() != Some(0),
            _ => false,
        };
    if flagged {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    }
}

fn error_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<ordshadow::Error>() {
        Some(ordshadow::Error::Feasibility(_)) => EXIT_FEASIBILITY,
        _ => EXIT_INPUT,
    }
}

fn error_payload(err: &anyhow::Error, code: i32) -> Value {
    let kind = if code == EXIT_FEASIBILITY { "feasibility" } else { "input" };
    json!({"schema": 1, "report": "error", "error": kind, "message": format!("{err:#}")})
}

/// Scalars of a payload as `path: value` lines; arrays of objects are
/// summarised by their length.
pub fn render_text(payload: &Value) -> String {
    fn walk(v: &Value, path: &str, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x, &p, out);
                }
            }
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
            }
            Value::Array(items) => out.push_str(&format!("{path}: {} entries\n", items.len())),
            _ => out.push_str(&format!("{path}: {}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk(payload, "", &mut out);
    out
}

fn render(payload: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{payload}\n"),
        Format::Text => render_text(payload),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            return Execution { code, stdout, stderr, payload: None, record: None };
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    dispatch(&cli, command)
}

fn dispatch(cli: &Cli, command: Vec<String>) -> Execution {
    let started = Instant::now();
    let g = &cli.globals;
    let mut stderr = String::new();
    let mut inputs = Inputs::default();
    let (code, payload) = match &cli.command {
        Command::Report(_) => replay(cli),
        cmd => match execute(cmd, g, &mut inputs) {
            Ok(payload) => (outcome_code(&payload), payload),
            Err(err) => {
                let code = error_code(&err);
                stderr.push_str(&format!("error: {err:#}\n"));
                (code, error_payload(&err, code))
            }
        },
    };
    let mut record_path = None;
    let mut code = code;
    if let Some(dir) = &g.record_dir {
        let digests = inputs.read.iter().map(|(p, b)| (p.clone(), digest(b))).collect();
        let config = serde_json::to_value(g).expect("flags serialize");
        let rec = RunRecord::new(command, config, digests, code, payload.clone(), started.elapsed().as_millis() as u64);
        match rec.persist(dir) {
            Ok(path) => record_path = Some(path),
            Err(err) => {
                stderr.push_str(&format!("error: {err:#}\n"));
                code = EXIT_INPUT;
            }
        }
    }
    let text = render(&payload, g.format);
    let stdout = match &g.output {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => String::new(),
            Err(err) => {
                stderr.push_str(&format!("error: cannot write {}: {err}\n", path.display()));
                code = EXIT_INPUT;
                text
            }
        },
        None => text,
    };
    Execution { code, stdout, stderr, payload: Some(payload), record: record_path }
}

/// Re-runs the record named by `--input` without persisting or writing
/// output, and compares.
fn replay(cli: &Cli) -> (i32, Value) {
    let fail = |err: anyhow::Error| {
        let code = error_code(&err);
        (code, error_payload(&err, code))
    };
    let Some(path) = &cli.globals.input else {
        return fail(commands::input_error("report replay needs --input RECORD"));
    };
    let stored = match RunRecord::load(path) {
        Ok(r) => r,
        Err(err) => return fail(err),
    };
    let mut argv = vec![OsString::from("ordshadow")];
    argv.extend(stored.command.iter().map(OsString::from));
    let mut fresh_cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return fail(commands::input_error(format!("stored command does not parse: {e}"))),
    };
    if matches!(fresh_cli.command, Command::Report(_)) {
        return fail(commands::input_error("a replay record cannot itself be replayed"));
    }
    fresh_cli.globals.record_dir = None;
    fresh_cli.globals.output = None;
    let started = Instant::now();
    let mut inputs = Inputs::default();
    let (code, payload) = match execute(&fresh_cli.command, &fresh_cli.globals, &mut inputs) {
        Ok(p) => (outcome_code(&p), p),
        Err(err) => {
            let code = error_code(&err);
            (code, error_payload(&err, code))
        }
    };
    let digests: BTreeMap<String, String> = inputs.read.iter().map(|(p, b)| (p.clone(), digest(b))).collect();
    let changed: Vec<String> = stored
        .inputs
        .iter()
        .filter(|(p, d)| digests.get(*p) != Some(*d))
        .map(|(p, _)| p.clone())
        .collect();
    let fresh = RunRecord::new(
        stored.command.clone(),
        stored.config.clone(),
        digests,
        code,
        payload,
        started.elapsed().as_millis() as u64,
    );
    replay_report(&stored, &fresh, changed)
}
