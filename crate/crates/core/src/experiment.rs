//! Periphery-to-target walk experiments.
//!
//! An instance is a shell-1 start node. Every selected algorithm walks once
//! from every instance; instance `i` always draws from the generator stream
//! `(master_seed, i)`, so algorithms are compared on paired randomness and
//! the outcome does not depend on how instances are scheduled.
//!
//! Only walks that reach the target set enter the step-count CDF. Stuck and
//! step-capped walks are tallied separately.

use alloc::vec::Vec;

use rand::seq::index;

use crate::decomposition::{ShellAssignment, TargetSet};
use crate::error::{ExperimentError, WalkError};
use crate::graph::{Graph, NodeId};
use crate::metrics::ShellProfile;
use crate::rng::{self, StreamRng};
use crate::walk::{Algorithm, WalkStatus, Walker};

pub const PERIPHERY_SHELL: u32 = 1;
pub const DEFAULT_K_MAX: usize = 15;

/// How the target shells of an experiment are chosen.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TargetsMode {
    Core,
    /// Detected pseudo-core shells together with the core.
    PseudoCore { theta: f64 },
    Explicit(TargetSet),
}

impl TargetsMode {
    /// `profile` must carry cascade statistics for the pseudo-core mode.
    pub fn resolve(
        &self,
        assignment: &ShellAssignment,
        profile: Option<&ShellProfile>,
    ) -> Result<TargetSet, ExperimentError> {
        match self {
            TargetsMode::Core => Ok(TargetSet::core(assignment)),
            TargetsMode::PseudoCore { theta } => {
                let profile = profile.ok_or(crate::error::MetricsError::MissingCascade(assignment.core_index()))?;
                let pseudo = profile.detect_pseudo_cores(*theta)?;
                if pseudo.is_empty() {
                    return Err(ExperimentError::NoPseudoCores);
                }
                Ok(pseudo.union(&TargetSet::core(assignment)))
            }
            TargetsMode::Explicit(set) if set.is_empty() => Err(WalkError::NoTargets.into()),
            TargetsMode::Explicit(set) => Ok(set.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentConfig {
    pub algorithms: Vec<Algorithm>,
    /// Drop start nodes adjacent to a target node.
    pub exclude_adjacent: bool,
    pub k_max: usize,
    pub master_seed: u64,
    /// Uniformly subsample at most this many instances.
    pub sample_limit: Option<usize>,
    /// Per-walk step cap; the node count when `None`.
    pub max_steps: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algorithms: Algorithm::ALL.to_vec(),
            exclude_adjacent: true,
            k_max: DEFAULT_K_MAX,
            master_seed: 0,
            sample_limit: None,
            max_steps: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.algorithms.is_empty() {
            return Err(ExperimentError::NoAlgorithms);
        }
        if self.k_max < 2 {
            return Err(ExperimentError::BadKMax(self.k_max));
        }
        if self.max_steps == Some(0) {
            return Err(WalkError::ZeroStepCap.into());
        }
        Ok(())
    }

    pub fn step_cap(&self, g: &Graph) -> usize {
        self.max_steps.unwrap_or(g.node_count())
    }
}

/// Shell-1 nodes outside the targets, optionally without those adjacent to a target, in id order.
pub fn enumerate_instances(
    g: &Graph,
    assignment: &ShellAssignment,
    targets: &TargetSet,
    exclude_adjacent: bool,
) -> Result<Vec<NodeId>, ExperimentError> {
    if targets.contains(PERIPHERY_SHELL) {
        return Err(ExperimentError::NoInstances);
    }
    let instances: Vec<NodeId> = assignment
        .members(PERIPHERY_SHELL)
        .iter()
        .copied()
        .filter(|&u| {
            !exclude_adjacent
                || !g
                    .neighbors(u)
                    .iter()
                    .any(|&v| targets.contains(assignment.shell(v)))
        })
        .collect();
    if instances.is_empty() {
        Err(ExperimentError::NoInstances)
    } else {
        Ok(instances)
    }
}

/// Keeps at most `limit` instances, chosen uniformly without replacement, in id order.
pub fn subsample(instances: Vec<NodeId>, limit: Option<usize>, master_seed: u64) -> Vec<NodeId> {
    match limit {
        Some(k) if k < instances.len() => {
            let mut rng = rng::stream(rng::subseed(master_seed, u64::MAX), 0);
            let mut picked: Vec<usize> = index::sample(&mut rng, instances.len(), k).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|i| instances[i]).collect()
        }
        _ => instances,
    }
}

/// Generator used by every algorithm for instance `index`.
pub fn instance_rng(master_seed: u64, index: u64) -> StreamRng {
    rng::stream(master_seed, index)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: WalkStatus,
    pub steps: usize,
}

/// Runs every configured algorithm from one instance.
pub fn run_instance(
    walker: &mut Walker<'_>,
    start: NodeId,
    index: u64,
    cfg: &ExperimentConfig,
    step_cap: usize,
) -> Result<Vec<Outcome>, WalkError> {
    cfg.algorithms
        .iter()
        .map(|&alg| {
            let mut rng = instance_rng(cfg.master_seed, index);
            walker.walk(alg, start, step_cap, &mut rng).map(|r| Outcome {
                status: r.status,
                steps: r.numsteps,
            })
        })
        .collect()
}

/// Schedules instances; implementations must return outcomes in instance order.
pub trait InstanceRunner {
    fn run_all(
        &self,
        g: &Graph,
        assignment: &ShellAssignment,
        targets: &TargetSet,
        instances: &[NodeId],
        cfg: &ExperimentConfig,
    ) -> Result<Vec<Vec<Outcome>>, WalkError>;
}

/// Runs instances one after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl InstanceRunner for Sequential {
    fn run_all(
        &self,
        g: &Graph,
        assignment: &ShellAssignment,
        targets: &TargetSet,
        instances: &[NodeId],
        cfg: &ExperimentConfig,
    ) -> Result<Vec<Vec<Outcome>>, WalkError> {
        let mut walker = Walker::new(g, assignment, targets)?;
        let cap = cfg.step_cap(g);
        instances
            .iter()
            .enumerate()
            .map(|(i, &start)| run_instance(&mut walker, start, i as u64, cfg, cap))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    pub instances: usize,
    pub reached: usize,
    pub stuck: usize,
    pub step_cap: usize,
    /// `P(R <= k)` over reached walks for `k = 2..=k_max`.
    pub cdf: Vec<f64>,
    pub mean_steps: Option<f64>,
    pub median_steps: Option<f64>,
    /// Step counts of reached walks, sorted.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub reached_steps: Vec<usize>,
}

impl AlgorithmReport {
    fn from_outcomes(algorithm: Algorithm, outcomes: impl Iterator<Item = Outcome>, k_max: usize) -> Self {
        let mut instances = 0;
        let (mut stuck, mut step_cap) = (0, 0);
        let mut steps = Vec::new();
        for o in outcomes {
            instances += 1;
            match o.status {
                WalkStatus::Reached => steps.push(o.steps),
                WalkStatus::Stuck => stuck += 1,
                WalkStatus::StepCapExceeded => step_cap += 1,
            }
        }
        steps.sort_unstable();
        let reached = steps.len();
        let cdf = (2..=k_max)
            .map(|k| {
                if reached == 0 {
                    0.0
                } else {
                    steps.partition_point(|&s| s <= k) as f64 / reached as f64
                }
            })
            .collect();
        let mean_steps = (reached > 0).then(|| steps.iter().sum::<usize>() as f64 / reached as f64);
        let median_steps = (reached > 0).then(|| {
            if reached % 2 == 1 {
                steps[reached / 2] as f64
            } else {
                (steps[reached / 2 - 1] + steps[reached / 2]) as f64 / 2.0
            }
        });
        AlgorithmReport {
            algorithm,
            instances,
            reached,
            stuck,
            step_cap,
            cdf,
            mean_steps,
            median_steps,
            reached_steps: steps,
        }
    }

    /// `P(R <= k)` over reached walks; `k` need not lie in the reported range.
    pub fn cdf_at(&self, k: usize) -> f64 {
        if self.reached == 0 {
            0.0
        } else {
            self.reached_steps.partition_point(|&s| s <= k) as f64 / self.reached as f64
        }
    }

    /// Fraction of all instances that reached the targets within `k` steps.
    pub fn success_within(&self, k: usize) -> f64 {
        if self.instances == 0 {
            0.0
        } else {
            self.reached_steps.partition_point(|&s| s <= k) as f64 / self.instances as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CdfReport {
    pub targets: TargetSet,
    pub k_max: usize,
    pub instance_count: usize,
    pub algorithms: Vec<AlgorithmReport>,
}

impl CdfReport {
    /// `outcomes[i][j]` is instance `i` under `algorithms[j]`.
    pub fn assemble(targets: TargetSet, algorithms: &[Algorithm], k_max: usize, outcomes: &[Vec<Outcome>]) -> Self {
        let reports = algorithms
            .iter()
            .enumerate()
            .map(|(j, &alg)| AlgorithmReport::from_outcomes(alg, outcomes.iter().map(|row| row[j]), k_max))
            .collect();
        CdfReport {
            targets,
            k_max,
            instance_count: outcomes.len(),
            algorithms: reports,
        }
    }

    pub fn get(&self, algorithm: Algorithm) -> Option<&AlgorithmReport> {
        self.algorithms.iter().find(|r| r.algorithm == algorithm)
    }

    /// Values `k = 2..=k_max` on the x axis of the CDF.
    pub fn ks(&self) -> impl Iterator<Item = usize> {
        2..=self.k_max
    }
}

/// Runs a full sweep on the calling thread.
pub fn run_experiment(
    g: &Graph,
    assignment: &ShellAssignment,
    targets: &TargetSet,
    cfg: &ExperimentConfig,
) -> Result<CdfReport, ExperimentError> {
    run_experiment_with(&Sequential, g, assignment, targets, cfg)
}

pub fn run_experiment_with<R: InstanceRunner + ?Sized>(
    runner: &R,
    g: &Graph,
    assignment: &ShellAssignment,
    targets: &TargetSet,
    cfg: &ExperimentConfig,
) -> Result<CdfReport, ExperimentError> {
    cfg.validate()?;
    if targets.is_empty() {
        return Err(WalkError::NoTargets.into());
    }
    let instances = enumerate_instances(g, assignment, targets, cfg.exclude_adjacent)?;
    let instances = subsample(instances, cfg.sample_limit, cfg.master_seed);
    run_on_instances(runner, g, assignment, targets, &instances, cfg)
}

fn run_on_instances<R: InstanceRunner + ?Sized>(
    runner: &R,
    g: &Graph,
    assignment: &ShellAssignment,
    targets: &TargetSet,
    instances: &[NodeId],
    cfg: &ExperimentConfig,
) -> Result<CdfReport, ExperimentError> {
    let outcomes = runner.run_all(g, assignment, targets, instances, cfg)?;
    Ok(CdfReport::assemble(targets.clone(), &cfg.algorithms, cfg.k_max, &outcomes))
}

/// The same instances evaluated against the core and against pseudo-core targets.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairedReport {
    pub core: CdfReport,
    pub pseudo: CdfReport,
    /// Mean steps under core targets divided by mean steps under pseudo-core
    /// targets, per algorithm; `None` when either side reached nothing.
    pub mean_step_ratio: Vec<(Algorithm, Option<f64>)>,
}

pub fn compare_targets(
    g: &Graph,
    assignment: &ShellAssignment,
    core_targets: &TargetSet,
    pseudo_targets: &TargetSet,
    cfg: &ExperimentConfig,
) -> Result<PairedReport, ExperimentError> {
    compare_targets_with(&Sequential, g, assignment, core_targets, pseudo_targets, cfg)
}

/// Instances are filtered against the union of both target sets.
pub fn compare_targets_with<R: InstanceRunner + ?Sized>(
    runner: &R,
    g: &Graph,
    assignment: &ShellAssignment,
    core_targets: &TargetSet,
    pseudo_targets: &TargetSet,
    cfg: &ExperimentConfig,
) -> Result<PairedReport, ExperimentError> {
    cfg.validate()?;
    if pseudo_targets.is_empty() {
        return Err(ExperimentError::NoPseudoCores);
    }
    if core_targets.is_empty() {
        return Err(WalkError::NoTargets.into());
    }
    let union = core_targets.union(pseudo_targets);
    let instances = enumerate_instances(g, assignment, &union, cfg.exclude_adjacent)?;
    let instances = subsample(instances, cfg.sample_limit, cfg.master_seed);
    let core = run_on_instances(runner, g, assignment, core_targets, &instances, cfg)?;
    let pseudo = run_on_instances(runner, g, assignment, pseudo_targets, &instances, cfg)?;
    let mean_step_ratio = core
        .algorithms
        .iter()
        .zip(&pseudo.algorithms)
        .map(|(c, p)| {
            let ratio = match (c.mean_steps, p.mean_steps) {
                (Some(c), Some(p)) if p > 0.0 => Some(c / p),
                _ => None,
            };
            (c.algorithm, ratio)
        })
        .collect();
    Ok(PairedReport {
        core,
        pseudo,
        mean_step_ratio,
    })
}

/// Per-algorithm walk outcomes against every instance, without aggregation.
pub fn outcome_matrix(
    g: &Graph,
    assignment: &ShellAssignment,
    targets: &TargetSet,
    instances: &[NodeId],
    cfg: &ExperimentConfig,
) -> Result<Vec<Vec<Outcome>>, WalkError> {
    Sequential.run_all(g, assignment, targets, instances, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::decomposition::k_shell_decompose;

    fn k4_pendant() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    }

    // K_4 on {0..3}, path 3-4-5-6.
    fn corridor() -> Graph {
        Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)])
    }

    #[test]
    fn adjacency_filter() {
        let g = k4_pendant();
        let a = k_shell_decompose(&g);
        let core = TargetSet::core(&a);
        assert_eq!(enumerate_instances(&g, &a, &core, true), Err(ExperimentError::NoInstances));
        assert_eq!(enumerate_instances(&g, &a, &core, false), Ok(vec![NodeId(4)]));
    }

    #[test]
    fn planted_filter_count() {
        // K_5 core {0..4}; ring {5..14} with one core link each (shell 3);
        // 40 leaves on core nodes and 160 leaves on ring nodes.
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, j));
            }
        }
        for r in 0..10 {
            edges.push((5 + r, 5 + (r + 1) % 10));
            edges.push((5 + r, r % 5));
        }
        let mut next = 15;
        for i in 0..40 {
            edges.push((i % 5, next));
            next += 1;
        }
        for i in 0..160 {
            edges.push((5 + i % 10, next));
            next += 1;
        }
        let g = Graph::from_edges(next, &edges);
        let a = k_shell_decompose(&g);
        assert_eq!(a.core_index(), 4);
        assert_eq!(a.members(1).len(), 200);
        let inst = enumerate_instances(&g, &a, &TargetSet::core(&a), true).unwrap();
        assert_eq!(inst.len(), 160);
    }

    #[test]
    fn corridor_cdf_jumps_at_three() {
        let g = corridor();
        let a = k_shell_decompose(&g);
        let cfg = ExperimentConfig {
            k_max: 6,
            ..Default::default()
        };
        // Node 4 neighbors the core, so node 5 and node 6 are the instances.
        let inst = enumerate_instances(&g, &a, &TargetSet::core(&a), true).unwrap();
        assert_eq!(inst, [NodeId(5), NodeId(6)]);
        let report = run_experiment(&g, &a, &TargetSet::core(&a), &ExperimentConfig {
            sample_limit: Some(1),
            ..cfg.clone()
        })
        .unwrap();
        assert_eq!(report.instance_count, 1);

        let only6 = outcome_matrix(&g, &a, &TargetSet::core(&a), &[NodeId(6)], &cfg).unwrap();
        let report = CdfReport::assemble(TargetSet::core(&a), &cfg.algorithms, cfg.k_max, &only6);
        for r in &report.algorithms {
            assert_eq!(r.cdf, [0.0, 1.0, 1.0, 1.0, 1.0]);
            assert_eq!(r.mean_steps, Some(3.0));
            assert_eq!(r.median_steps, Some(3.0));
        }
    }

    #[test]
    fn stuck_walks_are_excluded_from_cdf() {
        let outcomes = vec![
            vec![Outcome { status: WalkStatus::Reached, steps: 2 }],
            vec![Outcome { status: WalkStatus::Stuck, steps: 5 }],
            vec![Outcome { status: WalkStatus::Reached, steps: 4 }],
            vec![Outcome { status: WalkStatus::StepCapExceeded, steps: 9 }],
        ];
        let r = CdfReport::assemble(TargetSet::default(), &[Algorithm::RandomWalk], 5, &outcomes);
        let a = &r.algorithms[0];
        assert_eq!((a.instances, a.reached, a.stuck, a.step_cap), (4, 2, 1, 1));
        assert_eq!(a.cdf, [0.5, 0.5, 1.0, 1.0]);
        assert_eq!(a.median_steps, Some(3.0));
        assert_eq!(a.success_within(3), 0.25);
    }

    #[test]
    fn config_validation() {
        let g = corridor();
        let a = k_shell_decompose(&g);
        let core = TargetSet::core(&a);
        let bad = ExperimentConfig { k_max: 1, ..Default::default() };
        assert_eq!(run_experiment(&g, &a, &core, &bad), Err(ExperimentError::BadKMax(1)));
        let bad = ExperimentConfig { algorithms: vec![], ..Default::default() };
        assert_eq!(run_experiment(&g, &a, &core, &bad), Err(ExperimentError::NoAlgorithms));
    }

    #[test]
    fn degenerate_pseudo_targets_give_unit_ratio() {
        let g = corridor();
        let a = k_shell_decompose(&g);
        let core = TargetSet::core(&a);
        let paired = compare_targets(&g, &a, &core, &core, &ExperimentConfig::default()).unwrap();
        for (_, ratio) in &paired.mean_step_ratio {
            assert_eq!(*ratio, Some(1.0));
        }
        assert_eq!(
            compare_targets(&g, &a, &core, &TargetSet::default(), &ExperimentConfig::default()),
            Err(ExperimentError::NoPseudoCores)
        );
    }

    #[test]
    fn targets_mode_resolution() {
        let g = corridor();
        let a = k_shell_decompose(&g);
        assert_eq!(TargetsMode::Core.resolve(&a, None), Ok(TargetSet::core(&a)));
        assert!(TargetsMode::PseudoCore { theta: 0.9 }.resolve(&a, None).is_err());
        assert_eq!(
            TargetsMode::Explicit(TargetSet::default()).resolve(&a, None),
            Err(ExperimentError::Walk(WalkError::NoTargets))
        );
    }
}
