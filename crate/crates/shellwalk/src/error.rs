use std::path::PathBuf;

use shellwalk_core::{CascadeError, ExperimentError, GenerateError, GraphError, MetricsError, WalkError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}: no edges left after cleaning")]
    EmptyGraph(PathBuf),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cascade(#[from] CascadeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable machine-readable error category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } | Error::Csv { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::EmptyGraph(_) => "empty_graph",
            Error::Usage(_) => "usage",
            Error::Manifest(_) => "manifest",
            Error::Graph(_) => "graph",
            Error::Cascade(_) => "cascade",
            Error::Metrics(_) => "metrics",
            Error::Walk(_) => "walk",
            Error::Experiment(ExperimentError::NoInstances) => "no_instances",
            Error::Experiment(ExperimentError::NoPseudoCores) => "no_pseudo_cores",
            Error::Experiment(_) => "experiment",
            Error::Generate(_) => "generate",
        }
    }

    /// Process exit status: 2 for bad arguments, 3 for an empty instance set, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_)
            | Error::Cascade(CascadeError::BadProbability(_) | CascadeError::NoSamples)
            | Error::Metrics(MetricsError::BadTheta(_))
            | Error::Experiment(ExperimentError::BadKMax(_) | ExperimentError::NoAlgorithms)
            | Error::Generate(_) => 2,
            Error::Experiment(ExperimentError::NoInstances) => 3,
            _ => 1,
        }
    }
}
