//! Periphery-to-target walks.
//!
//! All four walkers move one node per step, never revisit a node, and stop
//! as soon as they step onto a node whose shell is in the target set. A
//! walker whose current node has no unvisited neighbor is `Stuck`; no
//! backtracking is attempted. Every argmax breaks ties toward the smallest
//! internal id.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::decomposition::{ShellAssignment, TargetSet};
use crate::error::WalkError;
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Algorithm {
    /// Uniform choice among unvisited neighbors.
    #[cfg_attr(feature = "serde", serde(rename = "rw"))]
    RandomWalk,
    /// Unvisited neighbor of highest degree.
    #[cfg_attr(feature = "serde", serde(rename = "dhc"))]
    DegreeHillClimb,
    /// Highest shell if it improves on the current one, else uniform.
    #[cfg_attr(feature = "serde", serde(rename = "sh"))]
    ShellHillClimb,
    /// Highest shell if it improves on the current one, else highest degree.
    #[cfg_attr(feature = "serde", serde(rename = "sa"))]
    ShellDegreeHillClimb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::RandomWalk,
        Algorithm::DegreeHillClimb,
        Algorithm::ShellHillClimb,
        Algorithm::ShellDegreeHillClimb,
    ];

    /// Short name used on the command line and in report headers.
    pub fn code(self) -> &'static str {
        match self {
            Algorithm::RandomWalk => "rw",
            Algorithm::DegreeHillClimb => "dhc",
            Algorithm::ShellHillClimb => "sh",
            Algorithm::ShellDegreeHillClimb => "sa",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownAlgorithm;

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of rw, dhc, sh, sa")
    }
}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rw" | "random" | "random-walk" => Ok(Algorithm::RandomWalk),
            "dhc" | "degree" => Ok(Algorithm::DegreeHillClimb),
            "sh" => Ok(Algorithm::ShellHillClimb),
            "sa" => Ok(Algorithm::ShellDegreeHillClimb),
            _ => Err(UnknownAlgorithm),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WalkStatus {
    Reached,
    Stuck,
    StepCapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkResult {
    pub start: NodeId,
    pub numsteps: usize,
    pub status: WalkStatus,
    /// Visited nodes in order, starting with `start`.
    pub path: Vec<NodeId>,
}

impl WalkResult {
    pub fn reached(&self) -> bool {
        self.status == WalkStatus::Reached
    }
}

/// Reusable per-thread walk state: a visited mask reset after each walk.
#[derive(Clone)]
pub struct Walker<'a> {
    g: &'a Graph,
    assignment: &'a ShellAssignment,
    target_mask: Vec<bool>,
    visited: Vec<bool>,
    candidates: Vec<NodeId>,
}

impl<'a> Walker<'a> {
    pub fn new(g: &'a Graph, assignment: &'a ShellAssignment, targets: &TargetSet) -> Result<Self, WalkError> {
        if targets.is_empty() {
            return Err(WalkError::NoTargets);
        }
        Ok(Walker {
            g,
            assignment,
            target_mask: targets.mask(assignment.core_index()),
            visited: vec![false; g.node_count()],
            candidates: Vec::new(),
        })
    }

    #[inline]
    fn is_target(&self, u: NodeId) -> bool {
        self.target_mask[self.assignment.shell(u) as usize]
    }

    pub fn walk<R: Rng + ?Sized>(
        &mut self,
        algorithm: Algorithm,
        start: NodeId,
        max_steps: usize,
        rng: &mut R,
    ) -> Result<WalkResult, WalkError> {
        if !self.g.contains(start) {
            return Err(WalkError::UnknownStart(start));
        }
        if max_steps == 0 {
            return Err(WalkError::ZeroStepCap);
        }
        if self.is_target(start) {
            return Err(WalkError::StartInTargets {
                node: start,
                shell: self.assignment.shell(start),
            });
        }

        let mut path = vec![start];
        self.visited[start.index()] = true;
        let mut current = start;
        let status = loop {
            if path.len() > max_steps {
                break WalkStatus::StepCapExceeded;
            }
            self.candidates.clear();
            let visited = &self.visited;
            self.candidates
                .extend(self.g.neighbors(current).iter().copied().filter(|v| !visited[v.index()]));
            if self.candidates.is_empty() {
                break WalkStatus::Stuck;
            }
            let next = self.choose(algorithm, current, rng);
            self.visited[next.index()] = true;
            path.push(next);
            current = next;
            if self.is_target(current) {
                break WalkStatus::Reached;
            }
        };

        for u in &path {
            self.visited[u.index()] = false;
        }
        Ok(WalkResult {
            start,
            numsteps: path.len() - 1,
            status,
            path,
        })
    }

    // `self.candidates` is nonempty and sorted by id.
    fn choose<R: Rng + ?Sized>(&self, algorithm: Algorithm, current: NodeId, rng: &mut R) -> NodeId {
        match algorithm {
            Algorithm::RandomWalk => self.uniform(rng),
            Algorithm::DegreeHillClimb => self.max_degree(),
            Algorithm::ShellHillClimb | Algorithm::ShellDegreeHillClimb => {
                let best = self.max_shell();
                if self.assignment.shell(best) > self.assignment.shell(current) {
                    best
                } else if algorithm == Algorithm::ShellHillClimb {
                    self.uniform(rng)
                } else {
                    self.max_degree()
                }
            }
        }
    }

    fn uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        self.candidates[rng.gen_range(0..self.candidates.len())]
    }

    fn max_by_key(&self, key: impl Fn(NodeId) -> usize) -> NodeId {
        let mut best = self.candidates[0];
        let mut best_key = key(best);
        for &v in &self.candidates[1..] {
            let k = key(v);
            if k > best_key {
                best = v;
                best_key = k;
            }
        }
        best
    }

    fn max_degree(&self) -> NodeId {
        self.max_by_key(|v| self.g.degree(v))
    }

    fn max_shell(&self) -> NodeId {
        self.max_by_key(|v| self.assignment.shell(v) as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub algorithm: Algorithm,
    pub targets: TargetSet,
    /// Defaults to the node count when `None`.
    pub max_steps: Option<usize>,
    pub seed: u64,
}

impl WalkConfig {
    pub fn new(algorithm: Algorithm, targets: TargetSet, seed: u64) -> Self {
        WalkConfig {
            algorithm,
            targets,
            max_steps: None,
            seed,
        }
    }
}

/// Runs one walk with a generator seeded from `cfg.seed`.
pub fn walk(g: &Graph, assignment: &ShellAssignment, start: NodeId, cfg: &WalkConfig) -> Result<WalkResult, WalkError> {
    let mut rng = crate::rng::stream(cfg.seed, 0);
    walk_with(g, assignment, start, cfg, &mut rng)
}

pub fn walk_with<R: Rng + ?Sized>(
    g: &Graph,
    assignment: &ShellAssignment,
    start: NodeId,
    cfg: &WalkConfig,
    rng: &mut R,
) -> Result<WalkResult, WalkError> {
    let cap = cfg.max_steps.unwrap_or(g.node_count());
    Walker::new(g, assignment, &cfg.targets)?.walk(cfg.algorithm, start, cap, rng)
}

pub fn random_walk(g: &Graph, a: &ShellAssignment, start: NodeId, targets: &TargetSet, seed: u64) -> Result<WalkResult, WalkError> {
    walk(g, a, start, &WalkConfig::new(Algorithm::RandomWalk, targets.clone(), seed))
}

pub fn degree_hill_climb(g: &Graph, a: &ShellAssignment, start: NodeId, targets: &TargetSet) -> Result<WalkResult, WalkError> {
    walk(g, a, start, &WalkConfig::new(Algorithm::DegreeHillClimb, targets.clone(), 0))
}

pub fn shell_hill_climb(g: &Graph, a: &ShellAssignment, start: NodeId, targets: &TargetSet, seed: u64) -> Result<WalkResult, WalkError> {
    walk(g, a, start, &WalkConfig::new(Algorithm::ShellHillClimb, targets.clone(), seed))
}

pub fn shell_degree_hill_climb(g: &Graph, a: &ShellAssignment, start: NodeId, targets: &TargetSet) -> Result<WalkResult, WalkError> {
    walk(g, a, start, &WalkConfig::new(Algorithm::ShellDegreeHillClimb, targets.clone(), 0))
}
