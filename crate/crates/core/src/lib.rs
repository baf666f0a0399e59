//! Shell structure of networks and walks from the periphery to the core.
//!
//! This crate is `no_std` and needs only `alloc`. It covers:
//!
//! - [`graph`]: immutable undirected simple graphs with external labels,
//! - [`decomposition`]: k-shell decomposition,
//! - [`cascade`]: independent cascade simulation and per-shell cascading power,
//! - [`metrics`]: shell density, leakage power and pseudo-core detection,
//! - [`walk`]: random walk, degree hill climbing and the two shell-guided climbers,
//! - [`experiment`]: instance enumeration and step-count CDF reports,
//! - [`generate`]: seeded Barabási–Albert, Erdős–Rényi and planted core-periphery graphs.
//!
//! All randomness flows from explicit `u64` seeds through counter-derived
//! ChaCha streams, so every result is reproducible.

#![no_std]

extern crate alloc;

pub mod cascade;
pub mod decomposition;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod rng;
pub mod stats;
pub mod walk;

pub use cascade::{cascading_power, run_independent_cascade, CascadeConfig, CascadeResult};
pub use decomposition::{k_shell_decompose, ShellAssignment, TargetSet};
pub use error::{CascadeError, ExperimentError, GenerateError, GraphError, MetricsError, WalkError};
pub use experiment::{
    compare_targets, enumerate_instances, run_experiment, CdfReport, ExperimentConfig, PairedReport, TargetsMode,
};
pub use generate::{generate, GraphKind, PlantedParams};
pub use graph::{CleaningReport, Graph, GraphBuilder, Label, NodeId};
pub use metrics::{detect_pseudo_cores, leakage_power, shell_density, shell_node_distribution, ShellProfile};
pub use stats::Summary;
pub use walk::{walk, Algorithm, WalkConfig, WalkResult, WalkStatus};
