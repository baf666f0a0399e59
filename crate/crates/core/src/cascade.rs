//! Independent cascade simulation and per-shell cascading power.
//!
//! Rounds are synchronous: every node infected in round `t` gets exactly one
//! attempt at each still-uninfected neighbor in round `t + 1`, each attempt
//! succeeding independently with probability `p_infect`. The process ends
//! after the first round that infects nobody.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::decomposition::ShellAssignment;
use crate::error::CascadeError;
use crate::graph::{Graph, NodeId};
use crate::rng::{self, StreamRng};
use crate::stats::{Accumulator, Summary};

pub const DEFAULT_P_INFECT: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CascadeConfig {
    pub p_infect: f64,
    pub seed: u64,
    /// Stop after this many rounds even if the cascade is still growing.
    pub max_iterations: Option<u32>,
}

impl Default for CascadeConfig {
    fn default() -> Self {
        CascadeConfig {
            p_infect: DEFAULT_P_INFECT,
            seed: 0,
            max_iterations: None,
        }
    }
}

impl CascadeConfig {
    pub fn new(p_infect: f64, seed: u64) -> Self {
        CascadeConfig {
            p_infect,
            seed,
            max_iterations: None,
        }
    }

    pub fn validate(&self) -> Result<(), CascadeError> {
        if (0.0..=1.0).contains(&self.p_infect) {
            Ok(())
        } else {
            Err(CascadeError::BadProbability(self.p_infect))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeResult {
    pub infected_count: usize,
    /// Rounds executed, counting the final round that infected nobody.
    pub iterations: u32,
    /// Infected nodes in infection order, when requested.
    pub infected_set: Option<Vec<NodeId>>,
}

/// Reusable cascade state for repeated runs on one graph.
pub struct CascadeSim<'g> {
    g: &'g Graph,
    infected: Vec<bool>,
    order: Vec<NodeId>,
}

impl<'g> CascadeSim<'g> {
    pub fn new(g: &'g Graph) -> Self {
        CascadeSim {
            g,
            infected: vec![false; g.node_count()],
            order: Vec::new(),
        }
    }

    /// Runs one cascade; `self.infected_nodes()` holds the outcome until the next run.
    pub fn run<R: Rng + ?Sized>(
        &mut self,
        seeds: &[NodeId],
        cfg: &CascadeConfig,
        rng: &mut R,
    ) -> Result<(usize, u32), CascadeError> {
        cfg.validate()?;
        if seeds.is_empty() {
            return Err(CascadeError::NoSeeds);
        }
        if let Some(&bad) = seeds.iter().find(|s| !self.g.contains(**s)) {
            return Err(CascadeError::UnknownSeed(bad));
        }
        for u in self.order.drain(..) {
            self.infected[u.index()] = false;
        }
        for &s in seeds {
            if !self.infected[s.index()] {
                self.infected[s.index()] = true;
                self.order.push(s);
            }
        }

        let p = cfg.p_infect;
        let mut round_start = 0;
        let mut iterations = 0u32;
        loop {
            if cfg.max_iterations.is_some_and(|cap| iterations >= cap) {
                break;
            }
            iterations += 1;
            let round_end = self.order.len();
            for i in round_start..round_end {
                let u = self.order[i];
                for &v in self.g.neighbors(u) {
                    if !self.infected[v.index()] && rng.gen::<f64>() < p {
                        self.infected[v.index()] = true;
                        self.order.push(v);
                    }
                }
            }
            if self.order.len() == round_end {
                break;
            }
            round_start = round_end;
        }
        Ok((self.order.len(), iterations))
    }

    pub fn infected_nodes(&self) -> &[NodeId] {
        &self.order
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }
}

/// One cascade from `seeds`, driven by a generator seeded from `cfg.seed`.
pub fn run_independent_cascade(
    g: &Graph,
    seeds: &[NodeId],
    cfg: &CascadeConfig,
) -> Result<CascadeResult, CascadeError> {
    let mut rng = rng::stream(cfg.seed, 0);
    run_independent_cascade_with(g, seeds, cfg, &mut rng, false)
}

pub fn run_independent_cascade_with<R: Rng + ?Sized>(
    g: &Graph,
    seeds: &[NodeId],
    cfg: &CascadeConfig,
    rng: &mut R,
    keep_set: bool,
) -> Result<CascadeResult, CascadeError> {
    let mut sim = CascadeSim::new(g);
    let (infected_count, iterations) = sim.run(seeds, cfg, rng)?;
    Ok(CascadeResult {
        infected_count,
        iterations,
        infected_set: keep_set.then(|| sim.infected_nodes().to_vec()),
    })
}

/// Generator for sample `index` of the cascading-power estimate of `shell`.
pub fn sample_rng(cfg: &CascadeConfig, shell: u32, index: u64) -> StreamRng {
    rng::stream(rng::subseed(cfg.seed, shell as u64), index)
}

/// One cascading-power sample: a uniform seed from `members`, then one cascade.
pub fn cascade_sample(
    sim: &mut CascadeSim<'_>,
    members: &[NodeId],
    shell: u32,
    index: u64,
    cfg: &CascadeConfig,
) -> Result<usize, CascadeError> {
    if members.is_empty() {
        return Err(CascadeError::EmptyShell(shell));
    }
    let mut rng = sample_rng(cfg, shell, index);
    let seed = members[rng.gen_range(0..members.len())];
    sim.run(&[seed], cfg, &mut rng).map(|(count, _)| count)
}

/// Mean and spread of the final cascade size over `samples` single-seed
/// cascades started from uniformly drawn members of `shell`.
pub fn cascading_power(
    g: &Graph,
    assignment: &ShellAssignment,
    shell: u32,
    samples: u64,
    cfg: &CascadeConfig,
) -> Result<Summary, CascadeError> {
    cfg.validate()?;
    if samples == 0 {
        return Err(CascadeError::NoSamples);
    }
    let members = assignment.members(shell);
    if members.is_empty() {
        return Err(CascadeError::EmptyShell(shell));
    }
    let mut sim = CascadeSim::new(g);
    let mut acc = Accumulator::new();
    for i in 0..samples {
        acc.push(cascade_sample(&mut sim, members, shell, i, cfg)? as u64);
    }
    Ok(acc.summary().expect("at least one sample"))
}
