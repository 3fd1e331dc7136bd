//! Seeded ensembles of anneals on a worker pool.
//!
//! Member `i` uses seed `split_seed(master_seed, i)` and is computed
//! independently of every other member; results are gathered by index, so
//! the output does not depend on the number of workers or on scheduling.

use std::time::Instant;

use adiamis_core::analysis::{anneal_on_basis, SampleStats};
use adiamis_core::basis::IsBasis;
use adiamis_core::dynamics::{EvolveOptions, ScheduleSpec};
use adiamis_core::rng::split_seed;
use rayon::prelude::*;
use serde::Serialize;

use crate::records::RunRecord;
use crate::source::GraphSource;
use crate::CliError;

#[derive(Debug, Clone)]
pub struct EnsembleConfig {
    pub source: GraphSource,
    pub count: usize,
    pub master_seed: u64,
    pub schedule: ScheduleSpec,
    /// Worker threads; `0` uses every available core.
    pub parallelism: usize,
    pub basis_cap: usize,
    /// Rerun every member with twice the steps and record the change in
    /// mean size.
    pub check_doubling: bool,
    pub timing: bool,
    pub evolve: EvolveOptions,
}

/// A finished member with its numerical diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberRun {
    pub index: usize,
    pub record: RunRecord,
    pub dimension: usize,
    pub total_time: f64,
    pub steps: usize,
    pub norm_drift: f64,
    pub doubling_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedMember {
    pub index: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct EnsembleResult {
    pub runs: Vec<MemberRun>,
    pub skipped: Vec<SkippedMember>,
    /// Over the ratios of completed members.
    pub stats: Option<SampleStats>,
}

impl EnsembleResult {
    pub fn records(&self) -> impl Iterator<Item = &RunRecord> {
        self.runs.iter().map(|r| &r.record)
    }

    pub fn max_norm_drift(&self) -> f64 {
        self.runs.iter().map(|r| r.norm_drift).fold(0.0, f64::max)
    }

    pub fn max_doubling_delta(&self) -> Option<f64> {
        self.runs.iter().filter_map(|r| r.doubling_delta).reduce(f64::max)
    }
}

enum Member {
    Done(Box<MemberRun>),
    Skipped(SkippedMember),
}

fn run_member(cfg: &EnsembleConfig, index: usize) -> Result<Member, CliError> {
    let start = Instant::now();
    let seed = split_seed(cfg.master_seed, index as u64);
    let g = cfg.source.build(seed)?;
    let basis = match IsBasis::build_capped(&g, cfg.basis_cap) {
        Ok(b) => b,
        Err(e @ adiamis_core::Error::BasisCap { .. }) => {
            return Ok(Member::Skipped(SkippedMember {
                index,
                seed,
                reason: e.to_string(),
            }))
        }
        Err(e) => return Err(e.into()),
    };
    let schedule = cfg.schedule.for_vertices(g.n())?;
    let out = anneal_on_basis(&g, &basis, &schedule, &cfg.evolve)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let doubling_delta = if cfg.check_doubling {
        let doubled = schedule.with_steps(2 * schedule.steps())?;
        let fine = anneal_on_basis(&g, &basis, &doubled, &cfg.evolve)?;
        Some((fine.mean_size - out.mean_size).abs())
    } else {
        None
    };
    Ok(Member::Done(Box::new(MemberRun {
        index,
        record: RunRecord {
            n: g.n(),
            m: g.m(),
            generator: cfg.source.label(),
            seed,
            alpha: out.mis.alpha,
            mean_size: out.mean_size,
            ratio: out.ratio,
            mis_probability: out.mis_probability,
            runtime_ms: cfg.timing.then_some(elapsed),
        },
        dimension: out.dimension,
        total_time: schedule.total_time(),
        steps: schedule.steps(),
        norm_drift: (out.final_norm - 1.0).abs(),
        doubling_delta,
    })))
}

pub fn run_ensemble(cfg: &EnsembleConfig) -> Result<EnsembleResult, CliError> {
    if cfg.count == 0 {
        return Err(CliError::Usage("ensemble count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let members: Vec<Result<Member, CliError>> =
        pool.install(|| (0..cfg.count).into_par_iter().map(|i| run_member(cfg, i)).collect());

    let mut runs = Vec::with_capacity(cfg.count);
    let mut skipped = Vec::new();
    for m in members {
        match m? {
            Member::Done(r) => runs.push(*r),
            Member::Skipped(s) => skipped.push(s),
        }
    }
    let ratios: Vec<f64> = runs.iter().map(|r| r.record.ratio).collect();
    Ok(EnsembleResult {
        stats: SampleStats::from_values(&ratios),
        runs,
        skipped,
    })
}
