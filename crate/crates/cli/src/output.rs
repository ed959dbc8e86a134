use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use multicommon::counterexamples::SweepRow;
use multicommon::Mode;

use crate::Failure;

pub const SCHEMA_VERSION: u32 = 1;

/// One line of `sweep.csv`; columns that do not apply are left empty.
#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub p: u64,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
}

impl CsvRow {
    pub fn from_sweep(row: &SweepRow, mode: Mode) -> Self {
        Self {
            p: row.p,
            n: (mode == Mode::Vector).then_some(row.n),
            alpha: Some(row.alpha),
            beta: Some(row.beta),
            value: row.value,
            threshold: row.threshold,
            margin: row.margin,
        }
    }
}

pub struct Artifact {
    pub name: &'static str,
    pub contents: String,
}

impl Artifact {
    pub fn json(name: &'static str, value: &impl Serialize) -> Self {
        let mut contents = serde_json::to_string_pretty(value).expect("artifact serializes");
        contents.push('\n');
        Self { name, contents }
    }
}

/// What a command produced, before it is written out.
pub struct Outcome {
    pub results: Value,
    pub verdict: String,
    pub lines: Vec<String>,
    pub sweep: Vec<CsvRow>,
    pub artifacts: Vec<Artifact>,
    pub violations: usize,
}

impl Outcome {
    pub fn new(results: Value, verdict: impl Into<String>, lines: Vec<String>) -> Self {
        Self {
            results,
            verdict: verdict.into(),
            lines,
            sweep: Vec::new(),
            artifacts: Vec::new(),
            violations: 0,
        }
    }
}

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub schema_version: u32,
    pub command: &'a str,
    pub inputs: &'a Value,
    pub environment: Value,
    pub results: &'a Value,
    pub verdict: &'a str,
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::new(2, format!("cannot write {}: {e}", path.display()))
}

pub fn write_text(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io_error(&path, e))
}

pub fn write_sweep(dir: &Path, rows: &[CsvRow]) -> Result<(), Failure> {
    let path = dir.join("sweep.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|e| io_error(&path, e))?;
    for row in rows {
        w.serialize(row).map_err(|e| io_error(&path, e))?;
    }
    w.flush().map_err(|e| io_error(&path, e))
}
