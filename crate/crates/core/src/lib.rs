//! Cut-location search for quantum circuit cutting.
//!
//! A circuit is turned into an undirected graph whose edges carry two weights,
//! `w = ln κ²` and `ŵ = ln τ`, one per possible space-like (gate) or time-like
//! (wire) cut. Clusters of that graph are circuit partitions. The crate
//! provides:
//!
//! - [`qasm`]: an OpenQASM 2.0 frontend producing a gate-level [`CircuitIR`].
//! - [`graph`]: the doubly-weighted [`CutGraph`] and cluster contraction.
//! - [`cluster`]: qubit-capped modularity clustering followed by a merge step
//!   that minimises the largest per-partition sampling overhead.
//! - [`overhead`]: per-partition overhead factors, shot budgets and the older
//!   Hoeffding-style bounds they are compared against.
//! - [`sim`]: a small statevector simulator and quasiprobability cutting
//!   estimator used to check the shot budgets empirically.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod circuit;
pub mod cluster;
pub mod fixtures;
pub mod graph;
mod math;
pub mod overhead;
pub mod qasm;
pub mod qubits;
pub mod sim;

pub use circuit::{CircuitIR, GateApp};
pub use cluster::{
    run_pipeline, step1_modularity, step2_lq_min, Clock, Clustering, NoClock, OrderPolicy,
    PipelineOptions, PipelineResult, StageMetrics,
};
pub use graph::{build_cut_graph, contract, CutGraph, CutKind, WeightTable};
pub use overhead::{build_report, OverheadReport};
pub use qasm::{parse_qasm, ParseError};
pub use qubits::QubitSet;

/// Absolute tolerance used when comparing gains and `ln I` values.
pub const TOLERANCE: f64 = 1e-9;
