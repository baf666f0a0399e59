//! Per-shell structural metrics and pseudo-core detection.
//!
//! A teleportation edge is an edge whose endpoints sit in different shells.
//! It is owned by its lower endpoint and its height is the shell
//! difference. Edges inside one shell count only toward that shell's
//! density.

use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{ShellAssignment, TargetSet};
use crate::error::MetricsError;
use crate::graph::{Graph, NodeId};
use crate::stats::Summary;

pub const DEFAULT_THETA: f64 = 0.9;
pub const DEFAULT_KAPPA: f64 = 1.0;

/// `(shell_index, node_count)` for every nonempty shell, increasing.
pub fn shell_node_distribution(assignment: &ShellAssignment) -> Vec<(u32, usize)> {
    assignment
        .nonempty_shells()
        .map(|s| (s, assignment.members(s).len()))
        .collect()
}

/// Number of edges of the subgraph induced by each shell, indexed by shell.
pub fn intra_edge_counts(g: &Graph, assignment: &ShellAssignment) -> Vec<usize> {
    let mut counts = vec![0usize; assignment.shells().len()];
    for (u, v) in g.edges() {
        let s = assignment.shell(u);
        if s == assignment.shell(v) {
            counts[s as usize] += 1;
        }
    }
    counts
}

/// `edges / C(nodes, 2)`, or 0 below two nodes.
pub fn density_of(nodes: usize, edges: usize) -> f64 {
    if nodes < 2 {
        0.0
    } else {
        let pairs = nodes as f64 * (nodes as f64 - 1.0) / 2.0;
        edges as f64 / pairs
    }
}

/// Density of the subgraph induced by one shell.
pub fn shell_density(g: &Graph, assignment: &ShellAssignment, shell: u32) -> Result<f64, MetricsError> {
    let members = assignment.members(shell);
    if members.is_empty() {
        return Err(MetricsError::EmptyShell(shell));
    }
    let mut edges = 0usize;
    for &u in members {
        edges += g
            .neighbors(u)
            .iter()
            .filter(|&&v| v > u && assignment.shell(v) == shell)
            .count();
    }
    Ok(density_of(members.len(), edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TeleportationEdge {
    /// Endpoint in the lower shell.
    pub from: NodeId,
    pub to: NodeId,
    pub height: u32,
}

/// Teleportation edges grouped by the shell of their lower endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeleportationEdgeSet {
    by_shell: Vec<Vec<TeleportationEdge>>,
}

impl TeleportationEdgeSet {
    pub fn new(g: &Graph, assignment: &ShellAssignment) -> Self {
        let mut by_shell = vec![Vec::new(); assignment.shells().len()];
        for (u, v) in g.edges() {
            let (su, sv) = (assignment.shell(u), assignment.shell(v));
            let edge = match su.cmp(&sv) {
                core::cmp::Ordering::Less => TeleportationEdge {
                    from: u,
                    to: v,
                    height: sv - su,
                },
                core::cmp::Ordering::Greater => TeleportationEdge {
                    from: v,
                    to: u,
                    height: su - sv,
                },
                core::cmp::Ordering::Equal => continue,
            };
            by_shell[assignment.shell(edge.from) as usize].push(edge);
        }
        TeleportationEdgeSet { by_shell }
    }

    pub fn outgoing(&self, shell: u32) -> &[TeleportationEdge] {
        self.by_shell.get(shell as usize).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.by_shell.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `κ · t · ΣH / (m · (n − m))` for a shell of `m` nodes in a graph of
    /// `n` nodes, with `t` outgoing teleportation edges of total height ΣH.
    pub fn leakage_power(
        &self,
        assignment: &ShellAssignment,
        shell: u32,
        kappa: f64,
    ) -> Result<f64, MetricsError> {
        let m = assignment.members(shell).len();
        if m == 0 {
            return Err(MetricsError::EmptyShell(shell));
        }
        let n = assignment.node_count();
        if m == n {
            return Err(MetricsError::LeakageUndefined(shell));
        }
        let out = self.outgoing(shell);
        let count = out.len() as f64;
        let height_sum: u64 = out.iter().map(|e| e.height as u64).sum();
        Ok(kappa * count * height_sum as f64 / (m as f64 * (n - m) as f64))
    }
}

/// Leakage power of one shell; see [`TeleportationEdgeSet::leakage_power`].
pub fn leakage_power(
    g: &Graph,
    assignment: &ShellAssignment,
    shell: u32,
    kappa: f64,
) -> Result<f64, MetricsError> {
    TeleportationEdgeSet::new(g, assignment).leakage_power(assignment, shell, kappa)
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShellRecord {
    pub shell_index: u32,
    pub node_count: usize,
    pub intra_edge_count: usize,
    pub density: f64,
    pub cascade: Option<Summary>,
    /// `None` when the shell holds every node of the graph.
    pub leakage_power: Option<f64>,
}

/// Metrics of every nonempty shell of one graph.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShellProfile {
    pub n: usize,
    pub m: usize,
    pub core_index: u32,
    pub kappa: f64,
    pub shells: Vec<ShellRecord>,
}

impl ShellProfile {
    /// Structural part of the profile; cascade statistics are attached separately.
    pub fn structural(g: &Graph, assignment: &ShellAssignment, kappa: f64) -> Self {
        let intra = intra_edge_counts(g, assignment);
        let tele = TeleportationEdgeSet::new(g, assignment);
        let shells = assignment
            .nonempty_shells()
            .map(|s| {
                let node_count = assignment.members(s).len();
                ShellRecord {
                    shell_index: s,
                    node_count,
                    intra_edge_count: intra[s as usize],
                    density: density_of(node_count, intra[s as usize]),
                    cascade: None,
                    leakage_power: tele.leakage_power(assignment, s, kappa).ok(),
                }
            })
            .collect();
        ShellProfile {
            n: g.node_count(),
            m: g.edge_count(),
            core_index: assignment.core_index(),
            kappa,
            shells,
        }
    }

    pub fn record(&self, shell: u32) -> Option<&ShellRecord> {
        self.shells.iter().find(|r| r.shell_index == shell)
    }

    pub fn set_cascade(&mut self, shell: u32, stats: Summary) {
        if let Some(r) = self.shells.iter_mut().find(|r| r.shell_index == shell) {
            r.cascade = Some(stats);
        }
    }

    /// Shell with the highest density; ties go to the higher index.
    pub fn densest_shell(&self) -> Option<u32> {
        self.shells
            .iter()
            .max_by(|a, b| a.density.total_cmp(&b.density).then(a.shell_index.cmp(&b.shell_index)))
            .map(|r| r.shell_index)
    }

    pub fn detect_pseudo_cores(&self, theta: f64) -> Result<TargetSet, MetricsError> {
        detect_pseudo_cores(self, theta)
    }
}

/// Non-core shells whose mean cascade size reaches `theta` times the core's.
pub fn detect_pseudo_cores(profile: &ShellProfile, theta: f64) -> Result<TargetSet, MetricsError> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(MetricsError::BadTheta(theta));
    }
    let mut means = Vec::with_capacity(profile.shells.len());
    for r in &profile.shells {
        let c = r.cascade.ok_or(MetricsError::MissingCascade(r.shell_index))?;
        means.push((r.shell_index, c.mean));
    }
    let core_mean = means
        .iter()
        .find(|(s, _)| *s == profile.core_index)
        .map(|&(_, m)| m)
        .ok_or(MetricsError::MissingCascade(profile.core_index))?;
    let bar = theta * core_mean;
    Ok(means
        .into_iter()
        .filter(|&(s, mean)| s != profile.core_index && mean >= bar)
        .map(|(s, _)| s)
        .collect())
}
