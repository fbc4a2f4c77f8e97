//! Output sinks and the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Collects one command's data in memory, then writes it to `--out` or stdout.
pub struct Sink {
    path: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self { path, buf: Vec::new() }
    }

    pub fn writer(&mut self) -> &mut Vec<u8> {
        &mut self.buf
    }

    /// Writes the data and returns `(path, sha256)` when it went to a file.
    pub fn finish(self) -> io::Result<Option<OutputRecord>> {
        match self.path {
            Some(path) => {
                if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)?;
                }
                fs::write(&path, &self.buf)?;
                Ok(Some(OutputRecord {
                    path: path.display().to_string(),
                    sha256: hex_sha256(&self.buf),
                    bytes: self.buf.len(),
                }))
            }
            None => {
                io::stdout().write_all(&self.buf)?;
                Ok(None)
            }
        }
    }
}

pub fn hex_sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub wall_time_secs: f64,
    pub fitted_constants: BTreeMap<String, f64>,
    pub outputs: Vec<OutputRecord>,
    pub warnings: Vec<String>,
}

/// Manifest path for a data file: `scan.csv` → `scan.csv.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub struct Run {
    started: Instant,
    pub constants: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub extra_outputs: Vec<OutputRecord>,
}

impl Run {
    pub fn start() -> Self {
        Self { started: Instant::now(), constants: BTreeMap::new(), warnings: Vec::new(), extra_outputs: Vec::new() }
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        eprintln!("warning: {msg}");
        self.warnings.push(msg);
    }

    pub fn manifest(self, command: &str, config: serde_json::Value, output: Option<OutputRecord>) -> RunManifest {
        let mut outputs: Vec<OutputRecord> = output.into_iter().collect();
        outputs.extend(self.extra_outputs);
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            wall_time_secs: self.started.elapsed().as_secs_f64(),
            fitted_constants: self.constants,
            outputs,
            warnings: self.warnings,
        }
    }
}
