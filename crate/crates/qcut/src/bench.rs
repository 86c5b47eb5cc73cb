//! Benchmark runs over a directory of QASM files.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::{load_circuit, partition};

/// One CSV row. Failed files keep their name and carry the error text.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub name: String,
    #[serde(rename = "L_Q")]
    pub lq: Option<f64>,
    pub n_space: Option<usize>,
    pub n_time: Option<usize>,
    #[serde(rename = "L_tot")]
    pub l_tot: Option<f64>,
    #[serde(rename = "R")]
    pub r: Option<usize>,
    pub wall_time_s: Option<f64>,
    #[serde(rename = "L_Q_step1")]
    pub lq_step1: Option<f64>,
    pub error: String,
}

impl BenchRow {
    pub fn is_ok(&self) -> bool {
        self.error.is_empty()
    }
}

/// `.qasm` files directly inside `dir`, sorted by path.
pub fn qasm_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "qasm") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn run_one(path: &Path, cfg: &RunConfig) -> BenchRow {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match load_circuit(path).and_then(|c| partition(&c, cfg)) {
        Ok(p) => {
            let out = p.output;
            BenchRow {
                name,
                lq: Some(out.report.lq),
                n_space: Some(out.report.n_space),
                n_time: Some(out.report.n_time),
                l_tot: Some(out.report.l_tot),
                r: Some(out.report.r),
                wall_time_s: Some(round4(out.stages.iter().map(|s| s.wall_time_s).sum())),
                lq_step1: Some(out.stages[0].lq),
                error: String::new(),
            }
        }
        Err(e) => BenchRow {
            name,
            lq: None,
            n_space: None,
            n_time: None,
            l_tot: None,
            r: None,
            wall_time_s: None,
            lq_step1: None,
            error: e.to_string(),
        },
    }
}

/// Partitions every file independently and in parallel; rows keep file order.
pub fn run_bench(dir: &Path, cfg: &RunConfig) -> Result<Vec<BenchRow>, CliError> {
    let files = qasm_files(dir)?;
    if files.is_empty() {
        return Err(CliError::Config(format!(
            "no circuits found in {}",
            dir.display()
        )));
    }
    let rows: Vec<BenchRow> = files.par_iter().map(|p| run_one(p, cfg)).collect();
    for row in rows.iter().filter(|r| !r.is_ok()) {
        log::warn!("{}: {}", row.name, row.error);
    }
    if !rows.iter().any(BenchRow::is_ok) {
        return Err(CliError::Config(format!(
            "no circuit in {} could be partitioned",
            dir.display()
        )));
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn round4(t: f64) -> f64 {
    (t * 1e4).round() / 1e4
}
