use std::path::PathBuf;

use thiserror::Error;
use trapping::bounds::BoundsError;
use trapping::exact::SolveError;
use trapping::graph::io::EdgeListError;
use trapping::montecarlo::SimError;
use trapping::spectral::SpectralError;
use trapping::GraphError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    EdgeList(#[from] EdgeListError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("no star-type sidecar at {0}; generate the graph with `trapping generate startype --out` or pass --sidecar")]
    MissingSidecar(PathBuf),
    #[error("sidecar {path}: {message}")]
    Sidecar { path: PathBuf, message: String },
    #[error("{0} already exists; pass --force to overwrite")]
    Exists(PathBuf),
    #[error("scaling needs at least 3 sizes, got {0}")]
    InsufficientSizes(usize),
    #[error("vertex {0} does not appear in the edge list")]
    UnknownVertex(u64),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 3 for numerical failures, 2 for anything the user can fix in the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solve(
                SolveError::NumericalFailure { .. } | SolveError::SingularSystem(_),
            )
            | CliError::Spectral(_)
            | CliError::Sim(SimError::AllWalksCapped { .. }) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
