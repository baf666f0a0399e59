//! k-shell decomposition.
//!
//! A node's shell index is its coreness: the largest `k` such that it
//! belongs to the k-core. Nodes with no neighbors land in shell 0. The
//! computation is the bucket-based peeling scheme of Batagelj and
//! Zaversnik, which runs in `O(n + m)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::{Graph, NodeId};

/// Shell index of every node of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShellAssignment {
    shell: Vec<u32>,
    core_index: u32,
    shells: Vec<Vec<NodeId>>,
}

impl ShellAssignment {
    /// Builds an assignment from raw per-node shell indices.
    pub fn from_shells(shell: Vec<u32>) -> Self {
        let core_index = shell.iter().copied().max().unwrap_or(0);
        let mut shells = vec![Vec::new(); if shell.is_empty() { 0 } else { core_index as usize + 1 }];
        for (u, &s) in shell.iter().enumerate() {
            shells[s as usize].push(NodeId::from(u));
        }
        ShellAssignment {
            shell,
            core_index,
            shells,
        }
    }

    #[inline]
    pub fn shell(&self, u: NodeId) -> u32 {
        self.shell[u.index()]
    }

    pub fn try_shell(&self, u: NodeId) -> Result<u32, GraphError> {
        self.shell
            .get(u.index())
            .copied()
            .ok_or(GraphError::UnknownNode(u))
    }

    /// Shell index of every node, indexed by internal id.
    pub fn as_slice(&self) -> &[u32] {
        &self.shell
    }

    /// Maximum shell index; the core is the set of nodes carrying it.
    pub fn core_index(&self) -> u32 {
        self.core_index
    }

    /// Nodes of shell `s` in increasing id order; empty for unused indices.
    pub fn members(&self, s: u32) -> &[NodeId] {
        self.shells.get(s as usize).map_or(&[], Vec::as_slice)
    }

    /// Member lists for indices `0..=core_index`, including empty ones.
    pub fn shells(&self) -> &[Vec<NodeId>] {
        &self.shells
    }

    /// Indices of shells with at least one node, increasing.
    pub fn nonempty_shells(&self) -> impl Iterator<Item = u32> + '_ {
        self.shells
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_empty())
            .map(|(s, _)| s as u32)
    }

    pub fn node_count(&self) -> usize {
        self.shell.len()
    }

    pub fn is_target(&self, u: NodeId, targets: &TargetSet) -> Result<bool, GraphError> {
        self.try_shell(u).map(|s| targets.contains(s))
    }
}

/// A set of shell indices that a walk tries to reach.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct TargetSet(BTreeSet<u32>);

impl TargetSet {
    pub fn core(assignment: &ShellAssignment) -> Self {
        TargetSet::from_iter([assignment.core_index()])
    }

    #[inline]
    pub fn contains(&self, shell: u32) -> bool {
        self.0.contains(&shell)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &TargetSet) -> TargetSet {
        TargetSet(self.0.union(&other.0).copied().collect())
    }

    /// Per-shell membership mask over `0..=max_shell`.
    pub fn mask(&self, max_shell: u32) -> Vec<bool> {
        (0..=max_shell).map(|s| self.contains(s)).collect()
    }
}

impl FromIterator<u32> for TargetSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        TargetSet(iter.into_iter().collect())
    }
}

/// Computes the shell index of every node.
pub fn k_shell_decompose(g: &Graph) -> ShellAssignment {
    let n = g.node_count();
    if n == 0 {
        return ShellAssignment::from_shells(Vec::new());
    }
    let max_deg = g.max_degree();
    let mut deg: Vec<usize> = g.nodes().map(|u| g.degree(u)).collect();

    // Counting sort of nodes by degree: `order` holds nodes sorted by current
    // degree, `bin_start[d]` is the first slot of degree-d nodes, `pos[u]`
    // is the slot of u.
    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin_start[d + 1] += 1;
    }
    for d in 1..bin_start.len() {
        bin_start[d] += bin_start[d - 1];
    }
    let mut next = bin_start.clone();
    let mut order = vec![0u32; n];
    let mut pos = vec![0usize; n];
    for u in 0..n {
        let d = deg[u];
        pos[u] = next[d];
        order[next[d]] = u as u32;
        next[d] += 1;
    }

    for i in 0..n {
        let u = order[i] as usize;
        let du = deg[u];
        for &v in g.neighbors(NodeId::from(u)) {
            let v = v.index();
            if deg[v] > du {
                // Move v to the front of its bin, then shrink the bin.
                let dv = deg[v];
                let front = bin_start[dv];
                let w = order[front] as usize;
                if w != v {
                    order.swap(pos[v], front);
                    pos[w] = pos[v];
                    pos[v] = front;
                }
                bin_start[dv] += 1;
                deg[v] -= 1;
            }
        }
    }

    ShellAssignment::from_shells(deg.into_iter().map(|d| d as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_pendant() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    }

    #[test]
    fn star_is_all_shell_one() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let a = k_shell_decompose(&g);
        assert!(a.as_slice().iter().all(|&s| s == 1));
        assert_eq!(a.core_index(), 1);
        // High degree does not imply high shell.
        assert_eq!(g.degree(NodeId(0)), 5);
        assert_eq!(a.shell(NodeId(0)), 1);
    }

    #[test]
    fn cycle_is_all_shell_two() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let a = k_shell_decompose(&Graph::from_edges(6, &edges));
        assert_eq!(a.as_slice(), &[2; 6]);
    }

    #[test]
    fn k4_with_pendant() {
        let a = k_shell_decompose(&k4_pendant());
        assert_eq!(a.as_slice(), &[3, 3, 3, 3, 1]);
        assert_eq!(a.core_index(), 3);
        assert_eq!(a.members(1), &[NodeId(4)]);
        assert!(a.members(2).is_empty());
        assert_eq!(a.shells().len(), 4);
        assert_eq!(a.nonempty_shells().collect::<Vec<_>>(), [1, 3]);
    }

    #[test]
    fn isolated_nodes_are_shell_zero() {
        let a = k_shell_decompose(&Graph::from_edges(3, &[(0, 1)]));
        assert_eq!(a.as_slice(), &[1, 1, 0]);
    }

    #[test]
    fn empty_graph() {
        let a = k_shell_decompose(&Graph::from_edges(0, &[]));
        assert_eq!(a.node_count(), 0);
        assert!(a.shells().is_empty());
    }

    #[test]
    fn target_membership() {
        let a = k_shell_decompose(&k4_pendant());
        let core = TargetSet::core(&a);
        assert_eq!(a.is_target(NodeId(0), &core), Ok(true));
        assert_eq!(a.is_target(NodeId(4), &core), Ok(false));
        assert_eq!(a.is_target(NodeId(5), &core), Err(GraphError::UnknownNode(NodeId(5))));
        let mid: TargetSet = [5, 6, 7].into_iter().collect();
        assert!(mid.contains(5));
        assert!(!mid.contains(4));
    }
}
