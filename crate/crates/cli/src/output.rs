use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Cli;

/// Why a command did not produce its output.
#[derive(Debug)]
pub enum Failure {
    Library(anharmonic::Error),
    Contract { suite: String, message: String, report: Value },
    Io(String),
    Usage(String),
}

impl From<anharmonic::Error> for Failure {
    fn from(e: anharmonic::Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    pub fn to_json(&self) -> String {
        let v = match self {
            Failure::Library(e) => json!({ "error": e.tag(), "message": e.to_string() }),
            Failure::Contract { suite, message, report } => {
                json!({ "error": "contract violation", "suite": suite, "message": message, "report": report })
            }
            Failure::Io(msg) => json!({ "error": "io", "message": msg }),
            Failure::Usage(msg) => json!({ "error": "usage", "message": msg }),
        };
        v.to_string()
    }
}

/// A command's primary output plus side files written next to `--out`.
pub struct Output {
    pub body: String,
    pub side_files: Vec<(&'static str, String)>,
}

impl Output {
    pub fn new(body: String) -> Self {
        Output { body, side_files: Vec::new() }
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    tool_version: &'static str,
    command_line: String,
    parameters: &'a Cli,
    timestamp: String,
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn emit(cli: &Cli, argv: &[String], out: Output) -> Result<(), Failure> {
    let Some(path) = &cli.common.out else {
        return match io::stdout().lock().write_all(out.body.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        };
    };
    fs::write(path, &out.body)?;
    for (suffix, body) in &out.side_files {
        fs::write(with_suffix(path, suffix), body)?;
    }
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        command_line: argv.join(" "),
        parameters: cli,
        timestamp: chrono::Utc::now().to_rfc3339(),
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Io(e.to_string()))?;
    fs::write(with_suffix(path, ".manifest.json"), text + "\n")?;
    Ok(())
}
