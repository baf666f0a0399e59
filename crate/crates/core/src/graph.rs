//! Immutable undirected simple graphs in compressed adjacency form.
//!
//! Nodes carry a dense internal id (`0..n`) plus the external [`Label`] they
//! were loaded with. Construction goes through [`GraphBuilder`], which drops
//! self-loops, collapses duplicate and reversed edges, and records what it
//! discarded in a [`CleaningReport`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;

/// Dense internal node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    #[inline]
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// External node identifier as it appeared in the input.
///
/// Integer labels order numerically and sort before text labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum Label {
    Int(u64),
    Text(String),
}

impl Label {
    /// Parses a token, preferring the integer form.
    pub fn parse(token: &str) -> Label {
        match token.parse::<u64>() {
            Ok(v) => Label::Int(v),
            Err(_) => Label::Text(String::from(token)),
        }
    }
}

impl From<u64> for Label {
    fn from(v: u64) -> Self {
        Label::Int(v)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

/// Counts of input items discarded while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CleaningReport {
    pub edges_seen: usize,
    pub self_loops: usize,
    /// Repeated edges, including `v u` after `u v`.
    pub duplicates: usize,
}

/// Collects labelled edges and produces a [`Graph`].
///
/// Internal ids are handed out in order of first appearance.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: BTreeMap<Label, u32>,
    labels: Vec<Label>,
    edges: Vec<(u32, u32)>,
    report: CleaningReport,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a label, returning its internal id.
    pub fn add_node(&mut self, label: Label) -> NodeId {
        if let Some(&id) = self.ids.get(&label) {
            return NodeId(id);
        }
        let id = self.labels.len() as u32;
        self.ids.insert(label.clone(), id);
        self.labels.push(label);
        NodeId(id)
    }

    pub fn add_edge(&mut self, a: Label, b: Label) {
        let a = self.add_node(a);
        let b = self.add_node(b);
        self.add_edge_ids(a, b);
    }

    /// Adds an edge between nodes previously returned by [`add_node`](Self::add_node).
    pub fn add_edge_ids(&mut self, a: NodeId, b: NodeId) {
        self.report.edges_seen += 1;
        if a == b {
            self.report.self_loops += 1;
            return;
        }
        let (u, v) = if a < b { (a.0, b.0) } else { (b.0, a.0) };
        self.edges.push((u, v));
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self) -> (Graph, CleaningReport) {
        let GraphBuilder {
            labels,
            mut edges,
            mut report,
            ..
        } = self;
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        report.duplicates = before - edges.len();
        (Graph::from_sorted_unique(labels, &edges), report)
    }
}

/// Undirected simple graph with sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    labels: Vec<Label>,
}

impl Graph {
    /// Builds a graph over `0..n` with integer labels equal to the ids.
    ///
    /// Self-loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut norm: Vec<(u32, u32)> = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| {
                assert!(a < n && b < n, "edge ({a}, {b}) out of range for n = {n}");
                if a < b {
                    (a as u32, b as u32)
                } else {
                    (b as u32, a as u32)
                }
            })
            .collect();
        norm.sort_unstable();
        norm.dedup();
        let labels = (0..n as u64).map(Label::Int).collect();
        Graph::from_sorted_unique(labels, &norm)
    }

    // `edges` holds sorted, unique (u, v) pairs with u < v.
    fn from_sorted_unique(labels: Vec<Label>, edges: &[(u32, u32)]) -> Graph {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            let last = *offsets.last().unwrap();
            offsets.push(last + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![NodeId(0); 2 * edges.len()];
        for &(u, v) in edges {
            targets[fill[u as usize]] = NodeId(v);
            fill[u as usize] += 1;
            targets[fill[v as usize]] = NodeId(u);
            fill[v as usize] += 1;
        }
        for u in 0..n {
            targets[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Graph {
            offsets,
            targets,
            labels,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        u.index() < self.node_count()
    }

    /// Degree of `u`. Panics if `u` is out of range; see [`try_degree`](Self::try_degree).
    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u.index() + 1] - self.offsets[u.index()]
    }

    /// Neighbors of `u` in increasing id order.
    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u.index()]..self.offsets[u.index() + 1]]
    }

    pub fn try_degree(&self, u: NodeId) -> Result<usize, GraphError> {
        self.check(u).map(|_| self.degree(u))
    }

    pub fn try_neighbors(&self, u: NodeId) -> Result<&[NodeId], GraphError> {
        self.check(u).map(|_| self.neighbors(u))
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, u: NodeId) -> &Label {
        &self.labels[u.index()]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Linear scan for the node carrying `label`.
    pub fn find(&self, label: &Label) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label).map(NodeId::from)
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + Clone {
        (0..self.node_count() as u32).map(NodeId)
    }

    /// Every edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|u| self.degree(u)).max().unwrap_or(0)
    }

    fn check(&self, u: NodeId) -> Result<(), GraphError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(u))
        }
    }

    /// Component index per node (numbered in order of lowest member id) and the component count.
    pub fn components(&self) -> (Vec<u32>, usize) {
        const UNSEEN: u32 = u32::MAX;
        let n = self.node_count();
        let mut comp = vec![UNSEEN; n];
        let mut stack = Vec::new();
        let mut count = 0u32;
        for s in 0..n {
            if comp[s] != UNSEEN {
                continue;
            }
            comp[s] = count;
            stack.push(NodeId::from(s));
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if comp[v.index()] == UNSEEN {
                        comp[v.index()] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    /// Subgraph induced by `keep`, relabelled to contiguous ids in increasing original order.
    ///
    /// Returns the subgraph and the original id of each new node.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<NodeId>) {
        assert_eq!(keep.len(), self.node_count());
        let mut new_id = vec![u32::MAX; self.node_count()];
        let mut old_ids = Vec::new();
        for u in self.nodes() {
            if keep[u.index()] {
                new_id[u.index()] = old_ids.len() as u32;
                old_ids.push(u);
            }
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            if keep[u.index()] && keep[v.index()] {
                edges.push((new_id[u.index()], new_id[v.index()]));
            }
        }
        // Relabelling preserves order, so `edges` is still sorted and unique.
        let labels = old_ids.iter().map(|&u| self.label(u).clone()).collect();
        (Graph::from_sorted_unique(labels, &edges), old_ids)
    }

    /// The largest connected component as a standalone graph.
    ///
    /// Ties between equally large components go to the one holding the
    /// smallest external label.
    pub fn largest_connected_component(&self) -> Result<Graph, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let (comp, count) = self.components();
        let mut size = vec![0usize; count];
        let mut min_label: Vec<Option<&Label>> = vec![None; count];
        for u in self.nodes() {
            let c = comp[u.index()] as usize;
            size[c] += 1;
            let l = self.label(u);
            if min_label[c].is_none_or(|m| l < m) {
                min_label[c] = Some(l);
            }
        }
        let best = (0..count)
            .min_by(|&a, &b| size[b].cmp(&size[a]).then(min_label[a].cmp(&min_label[b])))
            .unwrap();
        if size[best] == self.node_count() {
            return Ok(self.clone());
        }
        let keep: Vec<bool> = comp.iter().map(|&c| c as usize == best).collect();
        Ok(self.induced_subgraph(&keep).0)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)])
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    #[test]
    fn builder_triangle() {
        let mut b = GraphBuilder::new();
        b.add_edge(0.into(), 1.into());
        b.add_edge(1.into(), 2.into());
        b.add_edge(2.into(), 0.into());
        let (g, report) = b.build();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert_eq!(report.self_loops, 0);
        assert_eq!(report.duplicates, 0);
    }

    #[test]
    fn builder_drops_loops_and_reversed_duplicates() {
        let mut b = GraphBuilder::new();
        b.add_edge(0.into(), 0.into());
        b.add_edge(0.into(), 1.into());
        b.add_edge(1.into(), 0.into());
        let (g, report) = b.build();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(report.self_loops, 1);
        assert_eq!(report.duplicates, 1);
        assert_eq!(report.edges_seen, 3);
    }

    #[test]
    fn degree_and_neighbors() {
        let s = star(5);
        assert_eq!(s.degree(NodeId(0)), 5);
        assert_eq!(s.degree(NodeId(3)), 1);
        assert_eq!(triangle().neighbors(NodeId(0)), &[NodeId(1), NodeId(2)]);
        assert_eq!(s.try_degree(NodeId(6)), Err(GraphError::UnknownNode(NodeId(6))));
        assert!(s.try_neighbors(NodeId(9)).is_err());
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let g = triangle();
        assert_eq!(g.largest_connected_component().unwrap(), g);
    }

    #[test]
    fn lcc_drops_smaller_component() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]);
        let lcc = g.largest_connected_component().unwrap();
        assert_eq!((lcc.node_count(), lcc.edge_count()), (3, 3));
        assert_eq!(lcc.labels(), &[Label::Int(0), Label::Int(1), Label::Int(2)]);
    }

    #[test]
    fn lcc_tie_prefers_smallest_label() {
        // Two triangles; the one on labels {2, 7, 9} holds the smallest label
        // even though it has the larger internal ids.
        let mut b = GraphBuilder::new();
        for (x, y) in [(10u64, 11u64), (11, 12), (12, 10), (7, 9), (9, 2), (2, 7)] {
            b.add_edge(x.into(), y.into());
        }
        let (g, _) = b.build();
        let lcc = g.largest_connected_component().unwrap();
        let mut labels = lcc.labels().to_vec();
        labels.sort();
        assert_eq!(labels, [Label::Int(2), Label::Int(7), Label::Int(9)]);
        assert!(lcc.is_connected());
    }

    #[test]
    fn lcc_of_empty_graph_is_error() {
        let g = Graph::from_edges(0, &[]);
        assert_eq!(g.largest_connected_component(), Err(GraphError::Empty));
    }

    #[test]
    fn text_labels_sort_after_integers() {
        assert!(Label::Int(u64::MAX) < Label::Text("a".into()));
        assert_eq!(Label::parse("42"), Label::Int(42));
        assert_eq!(Label::parse("n42"), Label::Text("n42".into()));
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::from_edges(4, &[(3, 0), (2, 1), (1, 0), (0, 3)]);
        let e: Vec<_> = g.edges().map(|(u, v)| (u.0, v.0)).collect();
        assert_eq!(e, [(0, 1), (0, 3), (1, 2)]);
    }
}
