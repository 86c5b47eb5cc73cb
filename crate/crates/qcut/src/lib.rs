//! File formats, configuration and drivers for the `qcut` command line.
//!
//! The algorithms live in [`qcut_core`]; this crate reads circuits from disk,
//! renders reports as JSON, CSV, DOT or text tables, runs benchmark
//! directories in parallel and drives the shot-budget verification harness.

pub mod bench;
pub mod clock;
pub mod config;
pub mod dot;
pub mod error;
pub mod report;
pub mod verify;

use std::path::Path;

use qcut_core::cluster::run_pipeline_with_clock;
use qcut_core::qasm::parse_qasm_named;
use qcut_core::{build_cut_graph, CircuitIR, Clustering, CutGraph};

pub use config::{OutputFormat, RunConfig};
pub use error::CliError;
pub use report::PartitionOutput;

/// Reads and parses a QASM file; the circuit is named after the file stem.
pub fn load_circuit(path: &Path) -> Result<CircuitIR, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".into());
    parse_qasm_named(&text, &name).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        source: e,
    })
}

/// A partitioned circuit: its cut graph, the final clustering and the report.
#[derive(Clone, Debug)]
pub struct Partitioned {
    pub graph: CutGraph,
    pub clustering: Clustering,
    pub output: PartitionOutput,
}

impl Partitioned {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => self.output.to_json(),
            OutputFormat::Csv => self.output.to_csv(),
            OutputFormat::Table => Ok(self.output.to_table()),
            OutputFormat::Dot => Ok(dot::to_dot(&self.graph, Some(&self.clustering))),
        }
    }
}

/// Graph construction, clustering and reporting for one circuit.
pub fn partition(circuit: &CircuitIR, cfg: &RunConfig) -> Result<Partitioned, CliError> {
    if cfg.max_qubits == 0 {
        return Err(CliError::InfeasibleCap(
            "infeasible qubit cap: --max-qubits must be at least 1".into(),
        ));
    }
    let graph = build_cut_graph(circuit, &cfg.weights)?;
    for kind in &graph.fallback_kinds {
        log::warn!("no weight entry for `{kind}`; using the cx weights");
    }
    let clock: Box<dyn qcut_core::Clock> = if cfg.timing {
        Box::new(clock::StdClock::new())
    } else {
        Box::new(qcut_core::NoClock)
    };
    let result = run_pipeline_with_clock(
        &graph,
        cfg.max_qubits,
        &cfg.pipeline_options(),
        clock.as_ref(),
    )?;
    let output = PartitionOutput::new(circuit, &graph, &result, cfg);
    Ok(Partitioned {
        graph,
        clustering: result.clustering,
        output,
    })
}
