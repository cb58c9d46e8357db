use thiserror::Error;

use crate::cnf::CnfError;
use crate::decomposition::DecompositionError;
use crate::graph::GraphError;
use crate::matching::MatchingError;
use crate::obdd::ObddError;

/// Crate-wide error, wrapping the per-module error types.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Obdd(#[from] ObddError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
