use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("graph has no nodes")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CascadeError {
    #[error("seed set is empty")]
    NoSeeds,
    #[error("seed {0} is not in the graph")]
    UnknownSeed(NodeId),
    #[error("infection probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("shell {0} has no nodes")]
    EmptyShell(u32),
    #[error("sample count must be at least 1")]
    NoSamples,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("shell {0} has no nodes")]
    EmptyShell(u32),
    #[error("shell {0} holds every node; leakage power is undefined")]
    LeakageUndefined(u32),
    #[error("shell {0} has no cascade statistics")]
    MissingCascade(u32),
    #[error("theta {0} is outside (0, 1]")]
    BadTheta(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("start node {0} is not in the graph")]
    UnknownStart(NodeId),
    #[error("start node {node} already lies in target shell {shell}")]
    StartInTargets { node: NodeId, shell: u32 },
    #[error("target shell set is empty")]
    NoTargets,
    #[error("step cap must be at least 1")]
    ZeroStepCap,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("no periphery instances remain after filtering")]
    NoInstances,
    #[error("no algorithms selected")]
    NoAlgorithms,
    #[error("k_max must be at least 2, got {0}")]
    BadKMax(usize),
    #[error("no pseudo-core shells were detected")]
    NoPseudoCores,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Walk(#[from] WalkError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("infeasible parameters: {0}")]
    Infeasible(&'static str),
}
