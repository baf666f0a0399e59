//! Seeded synthetic graphs.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::decomposition::k_shell_decompose;
use crate::error::GenerateError;
use crate::graph::Graph;
use crate::rng;

/// Parameters of a planted core-periphery graph.
///
/// Node ids are laid out as core, then mid layer, then tree nodes.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlantedParams {
    pub core_size: usize,
    /// Probability of each core pair being joined; 1 gives a clique.
    pub core_density: f64,
    /// Nodes of the optional mid layer, joined in a ring.
    pub mid_size: usize,
    /// Distinct core nodes each mid node links to.
    pub mid_core_links: usize,
    /// Pendant trees, each a chain of `tree_depth` nodes hung off a random core or mid node.
    pub tree_count: usize,
    pub tree_depth: usize,
}

impl PlantedParams {
    /// A clique core with pendant chains and no mid layer.
    pub fn clique_with_trees(core_size: usize, tree_count: usize, tree_depth: usize) -> Self {
        PlantedParams {
            core_size,
            core_density: 1.0,
            mid_size: 0,
            mid_core_links: 0,
            tree_count,
            tree_depth,
        }
    }

    /// A clique core plus a ring mid layer wired densely into it, with
    /// pendant chains on both. The mid layer forms shell `mid_core_links + 2`.
    pub fn with_mid_layer(
        core_size: usize,
        mid_size: usize,
        mid_core_links: usize,
        tree_count: usize,
        tree_depth: usize,
    ) -> Self {
        PlantedParams {
            core_size,
            core_density: 1.0,
            mid_size,
            mid_core_links,
            tree_count,
            tree_depth,
        }
    }

    /// Shell index of the mid layer when present.
    pub fn mid_shell(&self) -> Option<u32> {
        (self.mid_size > 0).then(|| self.mid_core_links as u32 + 2)
    }

    fn validate(&self) -> Result<(), GenerateError> {
        if self.core_size < 2 {
            return Err(GenerateError::Infeasible("core needs at least two nodes"));
        }
        if !(self.core_density > 0.0 && self.core_density <= 1.0) {
            return Err(GenerateError::Infeasible("core density must lie in (0, 1]"));
        }
        if self.tree_count > 0 && self.tree_depth == 0 {
            return Err(GenerateError::Infeasible("trees need depth at least 1"));
        }
        if self.mid_size > 0 {
            if self.mid_size < 3 {
                return Err(GenerateError::Infeasible("mid ring needs at least three nodes"));
            }
            if self.mid_core_links == 0 || self.mid_core_links > self.core_size {
                return Err(GenerateError::Infeasible("mid core links must lie in 1..=core_size"));
            }
            // The mid layer sits in shell links + 2, strictly below the core's shell.
            if self.mid_core_links + 2 >= self.core_size - 1 {
                return Err(GenerateError::Infeasible("mid layer would reach the core shell"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GraphKind {
    /// Preferential attachment from a clique of `attachments + 1` nodes.
    BarabasiAlbert { n: usize, attachments: usize },
    ErdosRenyi { n: usize, p: f64 },
    PlantedCorePeriphery(PlantedParams),
}

pub fn generate(kind: &GraphKind, seed: u64) -> Result<Graph, GenerateError> {
    match kind {
        GraphKind::BarabasiAlbert { n, attachments } => barabasi_albert(*n, *attachments, seed),
        GraphKind::ErdosRenyi { n, p } => erdos_renyi(*n, *p, seed),
        GraphKind::PlantedCorePeriphery(params) => planted_core_periphery(params, seed),
    }
}

pub fn barabasi_albert(n: usize, attachments: usize, seed: u64) -> Result<Graph, GenerateError> {
    let m = attachments;
    if m == 0 {
        return Err(GenerateError::Infeasible("attachments must be at least 1"));
    }
    if n < m + 1 {
        return Err(GenerateError::Infeasible("n must exceed the attachment count"));
    }
    let mut rng = rng::stream(seed, 0);
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // Every edge endpoint, so a uniform pick is degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * edges.capacity());
    for i in 0..=m {
        for j in i + 1..=m {
            edges.push((i, j));
            endpoints.extend([i, j]);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Ok(Graph::from_edges(n, &edges))
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Infeasible("edge probability must lie in [0, 1]"));
    }
    let mut rng = rng::stream(seed, 0);
    let mut edges = Vec::new();
    if p > 0.0 {
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
    }
    Ok(Graph::from_edges(n, &edges))
}

pub fn planted_core_periphery(params: &PlantedParams, seed: u64) -> Result<Graph, GenerateError> {
    params.validate()?;
    let mut rng = rng::stream(seed, 0);
    let c = params.core_size;
    let mid = params.mid_size;
    let mut edges = Vec::new();

    for i in 0..c {
        for j in i + 1..c {
            if params.core_density >= 1.0 || rng.gen::<f64>() < params.core_density {
                edges.push((i, j));
            }
        }
    }

    let core_ids: Vec<usize> = (0..c).collect();
    for k in 0..mid {
        let u = c + k;
        edges.push((u, c + (k + 1) % mid));
        for &t in core_ids.choose_multiple(&mut rng, params.mid_core_links) {
            edges.push((u, t));
        }
    }

    let anchors = c + mid;
    let mut next = anchors;
    for _ in 0..params.tree_count {
        let mut prev = rng.gen_range(0..anchors);
        for _ in 0..params.tree_depth {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }

    let g = Graph::from_edges(next, &edges);
    if params.core_density < 1.0 {
        let a = k_shell_decompose(&g);
        let top = a.core_index();
        if (0..c).any(|u| a.as_slice()[u] != top) || a.members(top).len() != c {
            return Err(GenerateError::Infeasible("sparse core does not form the maximum shell"));
        }
    }
    Ok(g)
}
