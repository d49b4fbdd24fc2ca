//! Report assembly shared by every subcommand.  One report per process:
//! input digests, check entries in execution order, an optional result
//! payload, and the overall verdict.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use altkron::algebra::AlgebraTable;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct CheckEntry {
    name: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

#[derive(Serialize)]
struct ReportBody {
    format: u32,
    command: String,
    args: Vec<String>,
    inputs: BTreeMap<String, InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<serde_json::Value>,
    pass: bool,
}

pub struct Reporter {
    body: ReportBody,
    timings: bool,
}

impl Reporter {
    pub fn new(command: &str, timings: bool) -> Self {
        Reporter {
            body: ReportBody {
                format: 1,
                command: command.to_string(),
                args: std::env::args().skip(1).collect(),
                inputs: BTreeMap::new(),
                seed: None,
                checks: Vec::new(),
                result: None,
                pass: false,
            },
            timings,
        }
    }

    pub fn input(&mut self, label: &str, path: &Path, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        let digest = InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        };
        self.body.inputs.insert(label.to_string(), digest);
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.body.seed = Some(seed);
    }

    pub fn set_result(&mut self, value: serde_json::Value) {
        self.body.result = Some(value);
    }

    pub fn start(&self) -> Instant {
        Instant::now()
    }

    /// Records one check.  Timing is attached only when the run asked for
    /// timings and the check had a start instant; entries recorded with
    /// `None` stay timing-free so batch-computed flags do not fake numbers.
    pub fn push(
        &mut self,
        started: Option<Instant>,
        name: &str,
        pass: bool,
        witness: Option<serde_json::Value>,
    ) {
        let timing_ms = match (self.timings, started) {
            (true, Some(t)) => Some(t.elapsed().as_millis()),
            _ => None,
        };
        self.body.checks.push(CheckEntry {
            name: name.to_string(),
            pass,
            witness,
            timing_ms,
        });
    }

    /// Prints the report, writes report.json when an output directory was
    /// given, and returns the overall verdict.
    pub fn finish(mut self, out: Option<&Path>) -> Result<bool, CliError> {
        self.body.pass = self.body.checks.iter().all(|c| c.pass);
        let text = serde_json::to_string_pretty(&self.body)
            .expect("report serialization cannot fail");
        println!("{text}");
        if let Some(dir) = out {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
            fs::write(dir.join("report.json"), format!("{text}\n"))
                .map_err(|e| CliError::input(format!("cannot write report.json: {e}")))?;
        }
        Ok(self.body.pass)
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<(AlgebraTable, Vec<u8>), CliError> {
    let bytes = read_file(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::input(format!("{} is not UTF-8", path.display())))?;
    let table = AlgebraTable::from_json_str(text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((table, bytes))
}

pub fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
    let text = serde_json::to_string_pretty(value)
        .expect("artifact serialization cannot fail");
    fs::write(dir.join(name), format!("{text}\n"))
        .map_err(|e| CliError::input(format!("cannot write {name}: {e}")))
}
