#![allow(dead_code)]

use shellwalk_core::{Graph, NodeId};

/// Shell indices by literal repeated pruning: for k = 0, 1, 2, ... delete
/// every node of degree <= k until none is left, then move to k + 1.
pub fn pruning_oracle(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.nodes().map(|u| g.degree(u)).collect();
    let mut shell = vec![0u32; n];
    let mut remaining = n;
    let mut k = 0usize;
    while remaining > 0 {
        loop {
            let doomed: Vec<usize> = (0..n).filter(|&u| alive[u] && deg[u] <= k).collect();
            if doomed.is_empty() {
                break;
            }
            for u in doomed {
                alive[u] = false;
                shell[u] = k as u32;
                remaining -= 1;
                for v in g.neighbors(NodeId(u as u32)) {
                    if alive[v.index()] {
                        deg[v.index()] -= 1;
                    }
                }
            }
        }
        k += 1;
    }
    shell
}

/// Expected final infected count of an independent cascade from `seeds`,
/// summed over every live/blocked outcome of the edges.
pub fn exhaustive_ic_mean(g: &Graph, seeds: &[NodeId], p: f64) -> f64 {
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    assert!(edges.len() <= 20, "enumeration is exponential in the edge count");
    let n = g.node_count();
    let mut total = 0.0;
    for mask in 0u32..(1 << edges.len()) {
        let live = mask.count_ones() as i32;
        let prob = p.powi(live) * (1.0 - p).powi(edges.len() as i32 - live);
        if prob == 0.0 {
            continue;
        }
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u.index()].push(v.index());
                adj[v.index()].push(u.index());
            }
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        for s in seeds {
            if !seen[s.index()] {
                seen[s.index()] = true;
                stack.push(s.index());
            }
        }
        let mut count = stack.len();
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        total += prob * count as f64;
    }
    total
}

pub fn clique_edges(nodes: &[usize]) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            e.push((nodes[i], nodes[j]));
        }
    }
    e
}
