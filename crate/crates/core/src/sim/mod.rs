//! Dense simulation and the quasiprobability cutting estimator used to check
//! shot budgets empirically.

pub mod channel;
pub mod estimator;
pub mod experiment;
pub mod gates;
pub mod statevector;

pub use channel::{
    reconstruct_channel, space_like_gate, time_like_identity, DecompositionSpec, ProcessMatrix,
};
pub use estimator::{
    cut_estimate, CutPlacement, CutPlan, EstimatorRun, ObservableFactor, ProductObservable,
    ShotAllocation,
};
pub use experiment::{variance_experiment, ExperimentConfig, ExperimentSummary};
pub use statevector::{simulate_statevector, StateVector};

use alloc::string::String;

use crate::circuit::CircuitError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("{qubits} qubits exceed the simulator limit of {max}")]
    TooManyQubits { qubits: usize, max: usize },
    #[error("gate `{0}` is not supported by the simulator")]
    UnsupportedGate(String),
    #[error("cut {0:?} cannot be decomposed")]
    UnsupportedCut(estimator::CutPlacement),
    #[error("cuts do not split the circuit into separate partitions")]
    NotDisconnected,
    #[error("observable does not factor along the partitions")]
    IncompatibleObservable,
    #[error("observable factors must have 2^k values in [-1, 1] on distinct qubits")]
    InvalidObservable,
    #[error("too many term combinations to enumerate")]
    TooManyVariants,
    #[error("unsupported experiment: {0}")]
    Config(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
