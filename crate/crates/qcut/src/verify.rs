//! Shot-budget verification presets on the 8-qubit validation circuit.

use std::fmt::Write;
use std::path::Path;

use qcut_core::sim::experiment::{run_repetition, summarize, ExperimentConfig, ExperimentSummary};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 1;
pub const CI_REPETITIONS: usize = 20;
pub const FULL_REPETITIONS: usize = 100;

/// One preset as read from a `--config` file.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetFile {
    pub partitions: usize,
    pub eps: f64,
    pub repetitions: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PresetsFile {
    One(PresetFile),
    Many(Vec<PresetFile>),
}

/// CI scale: both partition counts at ε = 0.2.
pub fn ci_presets(seed: u64) -> Vec<ExperimentConfig> {
    [3, 4]
        .map(|partitions| ExperimentConfig {
            partitions,
            eps: 0.2,
            repetitions: CI_REPETITIONS,
            seed,
        })
        .to_vec()
}

/// Full scale: presets (1) to (4).
pub fn full_presets(seed: u64) -> Vec<ExperimentConfig> {
    [(3, 0.03), (4, 0.03), (3, 0.01), (4, 0.01)]
        .map(|(partitions, eps)| ExperimentConfig {
            partitions,
            eps,
            repetitions: FULL_REPETITIONS,
            seed,
        })
        .to_vec()
}

pub fn load_presets(path: &Path, default_seed: u64) -> Result<Vec<ExperimentConfig>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parsed: PresetsFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let list = match parsed {
        PresetsFile::One(p) => vec![p],
        PresetsFile::Many(v) => v,
    };
    if list.is_empty() {
        return Err(CliError::Config(format!("{}: no presets", path.display())));
    }
    Ok(list
        .into_iter()
        .map(|p| ExperimentConfig {
            partitions: p.partitions,
            eps: p.eps,
            repetitions: p.repetitions.unwrap_or(CI_REPETITIONS),
            seed: p.seed.unwrap_or(default_seed),
        })
        .collect())
}

/// Runs the repetitions of one preset in parallel. Each repetition derives
/// its own RNG streams from `(seed, rep)`, so the result does not depend on
/// scheduling.
pub fn run_preset(cfg: &ExperimentConfig) -> Result<ExperimentSummary, CliError> {
    if cfg.repetitions == 0 || cfg.eps.is_nan() || cfg.eps <= 0.0 {
        return Err(CliError::Config(format!(
            "preset needs repetitions >= 1 and eps > 0 (got {} and {})",
            cfg.repetitions, cfg.eps
        )));
    }
    let reps = (0..cfg.repetitions)
        .into_par_iter()
        .map(|r| run_repetition(cfg, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(cfg, &reps))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PresetJson {
    pub partitions: usize,
    pub eps: f64,
    pub repetitions: usize,
    pub seed: u64,
    pub n_total: u64,
    pub std: f64,
    pub mean_error: f64,
    pub mean_error_z: f64,
    pub pass: bool,
}

impl From<&ExperimentSummary> for PresetJson {
    fn from(s: &ExperimentSummary) -> Self {
        Self {
            partitions: s.config.partitions,
            eps: s.config.eps,
            repetitions: s.config.repetitions,
            seed: s.config.seed,
            n_total: s.n_total,
            std: s.std,
            mean_error: s.mean_error,
            mean_error_z: s.mean_error_z,
            pass: s.within_bound(),
        }
    }
}

pub fn to_json(summaries: &[ExperimentSummary]) -> Result<String, CliError> {
    let rows: Vec<PresetJson> = summaries.iter().map(PresetJson::from).collect();
    Ok(serde_json::to_string_pretty(&rows)? + "\n")
}

pub fn to_table(summaries: &[ExperimentSummary]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>10}{:>8}{:>6}{:>14}{:>12}{:>10}  verdict",
        "partitions", "eps", "reps", "N_total", "std", "mean_z"
    );
    for s in summaries {
        let _ = writeln!(
            out,
            "{:>10}{:>8}{:>6}{:>14}{:>12.6}{:>10.3}  {}",
            s.config.partitions,
            s.config.eps,
            s.config.repetitions,
            s.n_total,
            s.std,
            s.mean_error_z,
            if s.within_bound() { "pass" } else { "FAIL" }
        );
    }
    out
}

/// `preset,rep,error` rows.
pub fn errors_csv(summaries: &[ExperimentSummary]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["partitions", "eps", "rep", "error"])?;
    for s in summaries {
        for (rep, e) in s.errors.iter().enumerate() {
            w.write_record([
                s.config.partitions.to_string(),
                s.config.eps.to_string(),
                rep.to_string(),
                format!("{e:e}"),
            ])?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let cfg = ExperimentConfig {
            partitions: 3,
            eps: 0.2,
            repetitions: 6,
            seed: 5,
        };
        let par = run_preset(&cfg).unwrap();
        let seq = qcut_core::sim::variance_experiment(&cfg).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn config_accepts_object_or_array() {
        let dir = tempfile::tempdir().unwrap();
        let one = dir.path().join("one.json");
        std::fs::write(&one, r#"{"partitions": 4, "eps": 0.1}"#).unwrap();
        let p = load_presets(&one, 9).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(
            (p[0].partitions, p[0].seed, p[0].repetitions),
            (4, 9, CI_REPETITIONS)
        );
        let many = dir.path().join("many.json");
        std::fs::write(&many, r#"[{"partitions": 3, "eps": 0.1, "seed": 2}, {"partitions": 4, "eps": 0.05, "repetitions": 3}]"#).unwrap();
        assert_eq!(load_presets(&many, 9).unwrap().len(), 2);
    }

    #[test]
    fn zero_repetitions_rejected() {
        let cfg = ExperimentConfig {
            partitions: 3,
            eps: 0.2,
            repetitions: 0,
            seed: 1,
        };
        assert!(run_preset(&cfg).is_err());
    }
}
