use std::path::Path;

use qcut_core::cluster::ClusterError;
use qcut_core::graph::GraphError;
use qcut_core::qasm::ParseError;
use qcut_core::sim::SimError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    InfeasibleCap(String),
    #[error("{0}")]
    Cluster(ClusterError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Process exit status: 2 for an unsatisfiable qubit cap, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InfeasibleCap(_) => 2,
            _ => 1,
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::InfeasibleCap { .. } => CliError::InfeasibleCap(e.to_string()),
            other => CliError::Cluster(other),
        }
    }
}
