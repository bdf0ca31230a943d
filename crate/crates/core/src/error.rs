use std::path::PathBuf;

use thiserror::Error;

use crate::network::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("wheel geometry rejected: {0}")]
    WheelConstraint(String),

    #[error("could not reach average degree {target} after {attempts} deployments")]
    DegreeUnreachable { target: f64, attempts: usize },

    #[error("wheel network placement failed after {0} attempts")]
    PlacementFailed(usize),

    #[error("graph file is malformed: {0}")]
    Malformed(String),

    #[error("nodes {u} and {v} are {distance} apart with sensing range {theta}: {reason}")]
    UdgViolation {
        u: NodeId,
        v: NodeId,
        distance: f64,
        theta: f64,
        reason: &'static str,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
