//! Run configuration: command-line flags layered over an optional JSON file.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use qcut_core::graph::CutWeight;
use qcut_core::{OrderPolicy, PipelineOptions, WeightTable};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderArg {
    Weighted,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaTau {
    pub kappa: f64,
    pub tau: f64,
}

impl From<KappaTau> for CutWeight {
    fn from(k: KappaTau) -> Self {
        CutWeight {
            kappa: k.kappa,
            tau: k.tau,
        }
    }
}

/// Weight-table overrides.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub time_like: Option<KappaTau>,
    #[serde(default)]
    pub space_like: BTreeMap<String, KappaTau>,
    /// Reject two-qubit gates without an entry instead of using the cx weights.
    #[serde(default)]
    pub strict: bool,
}

/// JSON configuration file; keys mirror the long flag names.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub max_qubits: Option<usize>,
    pub eps: Option<f64>,
    pub order: Option<OrderArg>,
    pub restarts: Option<usize>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub weights: Option<WeightsFile>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Flags as given on the command line; `None` means "not set".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_qubits: Option<usize>,
    pub eps: Option<f64>,
    pub order: Option<OrderArg>,
    pub restarts: Option<usize>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_qubits: usize,
    pub eps: Option<f64>,
    pub order: OrderArg,
    pub restarts: usize,
    pub format: OutputFormat,
    pub seed: u64,
    pub weights: WeightTable,
    /// Record wall-clock stage times; off gives reproducible output.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_qubits: 0,
            eps: None,
            order: OrderArg::Weighted,
            restarts: 1,
            format: OutputFormat::Json,
            seed: 0,
            weights: WeightTable::default(),
            timing: true,
        }
    }
}

impl RunConfig {
    pub fn resolve(file: Option<ConfigFile>, flags: Overrides) -> Result<Self, CliError> {
        let file = file.unwrap_or_default();
        let max_qubits = flags
            .max_qubits
            .or(file.max_qubits)
            .ok_or_else(|| CliError::Config("--max-qubits is required".into()))?;
        let restarts = flags.restarts.or(file.restarts).unwrap_or(1);
        if restarts == 0 {
            return Err(CliError::Config("--restarts must be at least 1".into()));
        }
        let eps = flags.eps.or(file.eps);
        if eps.is_some_and(|e| !(e > 0.0 && e.is_finite())) {
            return Err(CliError::Config("--eps must be positive".into()));
        }
        let mut weights = WeightTable::default();
        if let Some(w) = file.weights {
            if let Some(t) = w.time_like {
                weights.set_time_like(t.into())?;
            }
            for (gate, kt) in w.space_like {
                weights.insert_space_like(&gate, kt.into())?;
            }
            if w.strict {
                weights.set_fallback(None)?;
            }
        }
        Ok(Self {
            max_qubits,
            eps,
            order: flags.order.or(file.order).unwrap_or(OrderArg::Weighted),
            restarts,
            format: flags.format.or(file.format).unwrap_or(OutputFormat::Json),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            weights,
            timing: true,
        })
    }

    pub fn order_policy(&self) -> OrderPolicy {
        match self.order {
            OrderArg::Weighted => OrderPolicy::Weighted,
            OrderArg::Random => OrderPolicy::Random { seed: self.seed },
        }
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            order: self.order_policy(),
            restarts: self.restarts,
            direct_candidate: true,
        }
    }
}
