//! CSV artifacts and their metadata sidecars.
//!
//! Reals are written with 12 significant digits in their shortest form, so
//! identical results always produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};

/// A table with a fixed column order.
pub trait CsvTable {
    fn header(&self) -> &'static [&'static str];
    fn rows(&self) -> Vec<Vec<String>>;
}

/// Formats a real with 12 significant digits.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".to_string()
    } else if (1e-5..1e15).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Writes `table` to `path`: UTF-8, header row, `\n` line endings.
pub fn emit_csv(table: &impl CsvTable, path: &Path) -> Result<()> {
    let io = |e: std::io::Error| HarnessError::io(path, e);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| io(e.into()))?;
    w.write_record(table.header()).map_err(|e| io(e.into()))?;
    for row in table.rows() {
        w.write_record(&row).map_err(|e| io(e.into()))?;
    }
    w.flush().map_err(io)
}

#[derive(Debug, Serialize)]
struct Metadata<'a> {
    artifact: &'a str,
    command: &'a str,
    seed: u64,
    fast: bool,
    config: &'a ExperimentConfig,
}

/// `roc.csv` -> `roc.meta.json`.
pub fn metadata_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("meta.json")
}

/// Writes the sidecar recording everything needed to regenerate `csv_path`.
pub fn emit_metadata(csv_path: &Path, command: &str, cfg: &ExperimentConfig) -> Result<()> {
    let path = metadata_path(csv_path);
    let artifact = csv_path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or_default();
    let meta = Metadata {
        artifact,
        command,
        seed: cfg.seed,
        fast: cfg.fast,
        config: cfg,
    };
    let mut text = serde_json::to_string_pretty(&meta).expect("config serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))
}
