//! Partition reports and their JSON, CSV and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use qcut_core::cluster::{Route, StageMetrics};
use qcut_core::overhead::{build_report, ln_prior_bound};
use qcut_core::{CircuitIR, CutGraph, PipelineResult};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

const LN10: f64 = std::f64::consts::LN_10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageJson {
    pub stage: String,
    #[serde(rename = "L_Q")]
    pub lq: f64,
    #[serde(rename = "L_D")]
    pub ld: f64,
    #[serde(rename = "R")]
    pub r: usize,
    pub moves: usize,
    pub passes: usize,
    pub wall_time_s: f64,
}

impl From<&StageMetrics> for StageJson {
    fn from(m: &StageMetrics) -> Self {
        Self {
            stage: m.stage.into(),
            lq: m.lq,
            ld: m.ld,
            r: m.r,
            moves: m.moves,
            passes: m.passes,
            wall_time_s: m.wall_time_s,
        }
    }
}

/// Overhead summary of the final clustering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportJson {
    pub lq: f64,
    pub ld: f64,
    pub r: usize,
    pub n_space: usize,
    pub n_time: usize,
    pub n_tot_space: usize,
    pub n_tot_time: usize,
    pub l_tot: f64,
    pub ln_i_c: Vec<f64>,
    pub lq_log10: f64,
    pub ld_log10: f64,
    pub l_tot_log10: f64,
    pub eps: Option<f64>,
    pub n_c: Option<Vec<u64>>,
    pub n_total: Option<u64>,
    pub n_total_log10: Option<f64>,
    /// Hoeffding-style budget over all cuts with δ = 1/3, for comparison.
    pub prior_bound_log10: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterJson {
    pub id: usize,
    pub qubits: Vec<usize>,
    /// Qubits needed when each wire segment counts separately.
    pub segment_qubits: usize,
    pub ln_i: f64,
    pub nodes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionOutput {
    pub circuit: String,
    pub num_qubits: usize,
    pub two_qubit_gates: usize,
    pub max_qubits: usize,
    pub route: &'static str,
    pub stages: Vec<StageJson>,
    pub report: ReportJson,
    pub clusters: Vec<ClusterJson>,
    pub assignment: BTreeMap<String, usize>,
    pub qubit_rule_disagreements: Vec<usize>,
    pub fallback_gates: Vec<String>,
}

impl PartitionOutput {
    pub fn new(
        circuit: &CircuitIR,
        graph: &CutGraph,
        result: &PipelineResult,
        cfg: &RunConfig,
    ) -> Self {
        let cl = &result.clustering;
        let rep = build_report(graph, cl, cfg.eps);
        let segments = cl.segment_qubit_counts(graph);
        let clusters = (0..cl.num_clusters())
            .map(|c| ClusterJson {
                id: c,
                qubits: cl.qubits(c).as_slice().to_vec(),
                segment_qubits: segments[c],
                ln_i: rep.ln_i[c],
                nodes: cl
                    .members(c)
                    .into_iter()
                    .map(|n| graph.nodes[n].label())
                    .collect(),
            })
            .collect();
        Self {
            circuit: circuit.name.clone(),
            num_qubits: circuit.num_qubits,
            two_qubit_gates: circuit.two_qubit_gate_count(),
            max_qubits: cfg.max_qubits,
            route: match result.route {
                Route::TwoStage => "two_stage",
                Route::Direct => "direct",
            },
            stages: vec![(&result.step1).into(), (&result.step2).into()],
            report: report_json(&rep, cfg.eps),
            clusters,
            assignment: graph
                .nodes
                .iter()
                .map(|n| (n.label(), cl.cluster_of(n.id)))
                .collect(),
            qubit_rule_disagreements: cl.qubit_rule_disagreements(graph),
            fallback_gates: graph.fallback_kinds.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Header and one row in the column order of the step comparison table.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        w.write_record(self.csv_row())?;
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn csv_row(&self) -> Vec<String> {
        let (s1, s2) = (&self.stages[0], &self.stages[1]);
        let r = &self.report;
        vec![
            format!("{}_D{}", self.circuit, self.max_qubits),
            format!("{:.2}", s1.lq),
            format!("{:.2}", s2.lq),
            format!("{:.2}", s1.ld),
            format!("{:.2}", s2.ld),
            s1.r.to_string(),
            s2.r.to_string(),
            format!("{:.4}", s1.wall_time_s),
            format!("{:.4}", s2.wall_time_s),
            r.n_space.to_string(),
            r.n_time.to_string(),
            format!("{:.2}", r.l_tot),
            r.n_total.map(|n| n.to_string()).unwrap_or_default(),
        ]
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (n={}, D={})",
            self.circuit, self.num_qubits, self.max_qubits
        );
        let _ = writeln!(
            out,
            "{:<8}{:>10}{:>10}{:>6}{:>10}",
            "", "L_Q", "L_D", "R", "Time[s]"
        );
        for (label, s) in ["Step 1", "Step 2"].iter().zip(&self.stages) {
            let _ = writeln!(
                out,
                "{:<8}{:>10.2}{:>10.2}{:>6}{:>10.4}",
                label, s.lq, s.ld, s.r, s.wall_time_s
            );
        }
        let r = &self.report;
        let _ = writeln!(
            out,
            "n_space={} n_time={} L_tot={:.2}",
            r.n_space, r.n_time, r.l_tot
        );
        if let (Some(eps), Some(n)) = (r.eps, r.n_total) {
            let _ = writeln!(out, "eps={eps} N_total={n}");
        }
        out
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "circuit",
    "L_Q_step1",
    "L_Q_step2",
    "L_D_step1",
    "L_D_step2",
    "R_step1",
    "R_step2",
    "time_step1_s",
    "time_step2_s",
    "n_space",
    "n_time",
    "L_tot",
    "n_total",
];

fn report_json(rep: &qcut_core::OverheadReport, eps: Option<f64>) -> ReportJson {
    let shots = rep.shots.as_ref();
    ReportJson {
        lq: rep.lq,
        ld: rep.ld,
        r: rep.r,
        n_space: rep.n_space,
        n_time: rep.n_time,
        n_tot_space: rep.n_tot_space,
        n_tot_time: rep.n_tot_time,
        l_tot: rep.l_tot,
        ln_i_c: rep.ln_i.clone(),
        lq_log10: rep.lq_log10(),
        ld_log10: rep.ld_log10(),
        l_tot_log10: rep.l_tot_log10(),
        eps,
        n_c: shots.map(|s| s.per_cluster.clone()),
        n_total: shots.map(|s| s.total),
        n_total_log10: rep.n_total_log10(),
        prior_bound_log10: eps.map(|e| ln_prior_bound(rep.l_tot, e, 1.0 / 3.0, rep.r) / LN10),
    }
}
