//! Thread-pool drivers for walk sweeps and cascade sampling.
//!
//! Work items carry their own generator streams and results land in
//! index-ordered slots, so output never depends on the thread count.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use shellwalk_core::cascade::{cascade_sample, CascadeSim};
use shellwalk_core::experiment::{run_instance, InstanceRunner, Outcome};
use shellwalk_core::stats::Accumulator;
use shellwalk_core::walk::Walker;
use shellwalk_core::{
    CascadeConfig, CascadeError, ExperimentConfig, Graph, NodeId, ShellAssignment, ShellProfile, Summary, TargetSet,
    WalkError,
};

use crate::error::{Error, Result};

pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `None` or `Some(0)` uses one thread per available core.
    pub fn new(threads: Option<usize>) -> Result<Self> {
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads.unwrap_or(0))
            .build()
            .map_err(|e| Error::Usage(format!("cannot build thread pool: {e}")))?;
        Ok(Parallel { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn cascading_power(
        &self,
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
        let acc = self.pool.install(|| {
            (0..samples)
                .into_par_iter()
                .map_init(|| CascadeSim::new(g), |sim, i| cascade_sample(sim, members, shell, i, cfg))
                .try_fold(Accumulator::new, |mut acc, r| {
                    r.map(|size| {
                        acc.push(size as u64);
                        acc
                    })
                })
                .try_reduce(Accumulator::new, |a, b| Ok(a.merge(b)))
        })?;
        Ok(acc.summary().expect("at least one sample"))
    }

    /// Structural profile with cascade statistics attached to every nonempty shell.
    pub fn profile(
        &self,
        g: &Graph,
        assignment: &ShellAssignment,
        kappa: f64,
        samples: u64,
        cfg: &CascadeConfig,
    ) -> Result<ShellProfile, CascadeError> {
        let mut profile = ShellProfile::structural(g, assignment, kappa);
        for s in assignment.nonempty_shells() {
            let stats = self.cascading_power(g, assignment, s, samples, cfg)?;
            profile.set_cascade(s, stats);
        }
        Ok(profile)
    }
}

impl InstanceRunner for Parallel {
    fn run_all(
        &self,
        g: &Graph,
        assignment: &ShellAssignment,
        targets: &TargetSet,
        instances: &[NodeId],
        cfg: &ExperimentConfig,
    ) -> Result<Vec<Vec<Outcome>>, WalkError> {
        let walker = Walker::new(g, assignment, targets)?;
        let cap = cfg.step_cap(g);
        self.pool.install(|| {
            instances
                .par_iter()
                .enumerate()
                .map_init(
                    || walker.clone(),
                    |w, (i, &start)| run_instance(w, start, i as u64, cfg, cap),
                )
                .collect()
        })
    }
}
