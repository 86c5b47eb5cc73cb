//! Qubit-capped two-step clustering of a [`CutGraph`].
//!
//! Step 1 greedily maximises modularity with single-node moves that respect the
//! per-cluster qubit cap, contracting clusters between passes. Step 2 starts
//! from the step-1 supernodes and merges them while the largest per-cluster
//! overhead `L_Q = max_c ln I_c` does not grow. The number of clusters is an
//! output of the search.

mod adjacency;
pub mod exhaustive;
pub mod modularity;
mod order;
mod pipeline;
mod step1;
mod step2;

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{compact_assignment, CutGraph};
use crate::qubits::QubitSet;

pub use modularity::{modularity, modularity_gain, ModularityState};
pub use order::OrderPolicy;
pub use pipeline::{
    run_pipeline, run_pipeline_with_clock, Clock, NoClock, PipelineOptions, PipelineResult, Route,
    StageMetrics,
};
pub use step1::{step1_modularity, Step1Result};
pub use step2::{step2_lq_min, Step2Result};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClusterError {
    #[error(
        "infeasible qubit cap: node {node} alone carries {qubits} qubits but the cap is {cap}"
    )]
    InfeasibleCap {
        node: usize,
        qubits: usize,
        cap: usize,
    },
    #[error("restarts must be at least 1")]
    NoRestarts,
}

/// Node → cluster assignment with the qubit set of every cluster.
///
/// Cluster ids are dense (`0..num_clusters()`), numbered in order of each
/// cluster's smallest member.
#[derive(Clone, Debug, PartialEq)]
pub struct Clustering {
    assignment: Vec<usize>,
    qubits: Vec<QubitSet>,
}

impl Clustering {
    pub fn from_assignment(graph: &CutGraph, assignment: &[usize]) -> Self {
        assert_eq!(
            assignment.len(),
            graph.node_count(),
            "assignment must cover every node"
        );
        let (assignment, count) = compact_assignment(assignment);
        let mut qubits = vec![QubitSet::new(); count];
        for (node, &c) in assignment.iter().enumerate() {
            qubits[c].union_with(&graph.nodes[node].qubits);
        }
        Self { assignment, qubits }
    }

    pub fn singletons(graph: &CutGraph) -> Self {
        let ids: Vec<usize> = (0..graph.node_count()).collect();
        Self::from_assignment(graph, &ids)
    }

    pub fn single_cluster(graph: &CutGraph) -> Self {
        Self::from_assignment(graph, &vec![0; graph.node_count()])
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn num_clusters(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self, cluster: usize) -> &QubitSet {
        &self.qubits[cluster]
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == cluster)
            .collect()
    }

    pub fn max_cluster_qubits(&self) -> usize {
        self.qubits.iter().map(QubitSet::len).max().unwrap_or(0)
    }

    pub fn respects_cap(&self, cap: usize) -> bool {
        self.max_cluster_qubits() <= cap
    }

    /// Whether moving `node` into `c_to` keeps that cluster within `cap` qubits.
    pub fn qubit_feasible(&self, graph: &CutGraph, node: usize, c_to: usize, cap: usize) -> bool {
        qubit_feasible(&self.qubits[c_to], &graph.nodes[node].qubits, cap)
    }

    /// Qubits each cluster needs when every contiguous run of its nodes on a
    /// wire counts as a separate qubit. Only meaningful on atomic graphs.
    pub fn segment_qubit_counts(&self, graph: &CutGraph) -> Vec<usize> {
        let mut counts = vec![0; self.num_clusters()];
        for wire in graph.wire_nodes() {
            let mut prev = None;
            for id in wire {
                let c = self.assignment[id];
                if prev != Some(c) {
                    counts[c] += 1;
                }
                prev = Some(c);
            }
        }
        counts
    }

    /// Clusters whose union-rule qubit count differs from the segment rule.
    pub fn qubit_rule_disagreements(&self, graph: &CutGraph) -> Vec<usize> {
        self.segment_qubit_counts(graph)
            .into_iter()
            .enumerate()
            .filter(|&(c, seg)| seg != self.qubits[c].len())
            .map(|(c, _)| c)
            .collect()
    }
}

/// `|cluster ∪ node| ≤ cap`.
pub fn qubit_feasible(cluster: &QubitSet, node: &QubitSet, cap: usize) -> bool {
    cluster.union_len(node) <= cap
}

pub(crate) fn check_cap(graph: &CutGraph, cap: usize) -> Result<(), ClusterError> {
    match graph.nodes.iter().find(|n| n.qubits.len() > cap) {
        Some(n) => Err(ClusterError::InfeasibleCap {
            node: n.id,
            qubits: n.qubits.len(),
            cap,
        }),
        None => Ok(()),
    }
}
