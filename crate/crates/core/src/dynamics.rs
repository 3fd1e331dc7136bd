//! Time-ordered evolution inside the independent-set subspace.
//!
//! Amplitudes obey `d psi/dt = i A(theta(t)) psi` with `theta = omega_theta t`
//! and `omega_theta = pi omega_phi / T`. The run stops when `theta` reaches
//! `pi`, i.e. at `t = T / omega_phi` (which is `T` at the default
//! `omega_phi = 1`). Basis labels are the independent sets themselves at
//! every `theta`, so final probabilities refer directly to vertex subsets
//! and no spin reversal is applied.
//!
//! Each step applies `exp(i h A(theta(t + h/2)))`, through a Krylov
//! projection or a dense eigen-decomposition for small bases.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::IsBasis;
use crate::gauge::{GaugeMatrix, GaugeParams};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::krylov::{expm_apply, KrylovOptions, KrylovWorkspace};
use crate::linalg::{cnorm, HermitianOperator};
use crate::{Error, C64};

/// Fewest integrator steps chosen by [`Schedule::default_steps`].
pub const MIN_DEFAULT_STEPS: usize = 4000;

/// Annealing schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    total_time: f64,
    gamma: Option<f64>,
    omega_phi: f64,
    steps: usize,
}

impl Schedule {
    pub fn new(total_time: f64, omega_phi: f64, steps: usize) -> Result<Self, Error> {
        if !(total_time > 0.0 && total_time.is_finite()) {
            return Err(Error::InvalidParameter("total time must be positive"));
        }
        if !(omega_phi > 0.0 && omega_phi.is_finite()) {
            return Err(Error::InvalidParameter("omega_phi must be positive"));
        }
        if steps < 2 {
            return Err(Error::InvalidParameter("at least 2 integrator steps are needed"));
        }
        Ok(Self {
            total_time,
            gamma: None,
            omega_phi,
            steps,
        })
    }

    /// `T = n^gamma`, with [`Schedule::default_steps`] unless `steps` is given.
    pub fn from_gamma(n: usize, gamma: f64, omega_phi: f64, steps: Option<usize>) -> Result<Self, Error> {
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter("gamma must be finite"));
        }
        let total_time = (n as f64).powf(gamma);
        let steps = steps.unwrap_or_else(|| Self::default_steps(total_time, n));
        let mut s = Self::new(total_time, omega_phi, steps)?;
        s.gamma = Some(gamma);
        Ok(s)
    }

    /// `max(4000, ceil(50 T max(1, n/10)))`.
    pub fn default_steps(total_time: f64, n: usize) -> usize {
        let factor = (n as f64 / 10.0).max(1.0);
        let steps = (50.0 * total_time * factor).ceil();
        (steps as usize).max(MIN_DEFAULT_STEPS)
    }

    pub fn with_steps(mut self, steps: usize) -> Result<Self, Error> {
        if steps < 2 {
            return Err(Error::InvalidParameter("at least 2 integrator steps are needed"));
        }
        self.steps = steps;
        Ok(self)
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn omega_phi(&self) -> f64 {
        self.omega_phi
    }

    /// `pi omega_phi / T`.
    pub fn omega_theta(&self) -> f64 {
        PI * self.omega_phi / self.total_time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Time at which `theta` reaches `pi`.
    pub fn end_time(&self) -> f64 {
        self.total_time / self.omega_phi
    }

    pub fn step_size(&self) -> f64 {
        self.end_time() / self.steps as f64
    }

    pub fn theta_at(&self, t: f64) -> f64 {
        (self.omega_theta() * t).min(PI)
    }

    pub fn params_at(&self, t: f64) -> GaugeParams {
        GaugeParams {
            theta: self.theta_at(t),
            omega_phi: self.omega_phi,
            omega_theta: self.omega_theta(),
        }
    }
}

/// How a schedule is derived for a graph of a given size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunTime {
    /// Fixed `T`.
    Total(f64),
    /// `T = n^gamma`.
    Exponent(f64),
}

/// Schedule recipe shared by the members of an ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleSpec {
    pub run_time: RunTime,
    pub omega_phi: f64,
    /// `None` selects [`Schedule::default_steps`].
    pub steps: Option<usize>,
}

impl Default for ScheduleSpec {
    fn default() -> Self {
        Self {
            run_time: RunTime::Exponent(2.0),
            omega_phi: 1.0,
            steps: None,
        }
    }
}

impl ScheduleSpec {
    pub fn for_vertices(&self, n: usize) -> Result<Schedule, Error> {
        match self.run_time {
            RunTime::Exponent(gamma) => Schedule::from_gamma(n, gamma, self.omega_phi, self.steps),
            RunTime::Total(t) => {
                let steps = self.steps.unwrap_or_else(|| Schedule::default_steps(t, n));
                Schedule::new(t, self.omega_phi, steps)
            }
        }
    }
}

/// Amplitudes over an [`IsBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Wraps amplitudes; they must have unit norm within `1e-8`.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self, Error> {
        let drift = (cnorm(&amplitudes) - 1.0).abs();
        if drift.is_nan() || drift >= 1e-8 {
            return Err(Error::NormDrift {
                drift,
                tolerance: 1e-8,
            });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        cnorm(&self.amplitudes)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }
}

/// The empty set, i.e. every spin down.
pub fn initial_state(basis: &IsBasis) -> StateVector {
    let mut amplitudes = vec![C64::new(0.0, 0.0); basis.dimension()];
    amplitudes[0] = C64::new(1.0, 0.0);
    StateVector { amplitudes }
}

/// Step propagator selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagator {
    /// Dense up to [`EvolveOptions::dense_max_dim`], Krylov above.
    Auto,
    Dense,
    Krylov,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub propagator: Propagator,
    pub dense_max_dim: usize,
    /// Dense fallback for a Krylov failure is allowed up to this dimension.
    pub dense_fallback_max_dim: usize,
    pub krylov: KrylovOptions,
    /// Allowed `|1 - ||psi|||` at the end of a run and at every snapshot.
    pub norm_tolerance: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            propagator: Propagator::Auto,
            dense_max_dim: 8,
            dense_fallback_max_dim: 2048,
            krylov: KrylovOptions::default(),
            norm_tolerance: 1e-8,
        }
    }
}

/// Integrates from `theta = 0` to `theta = pi`.
pub fn evolve(
    basis: &IsBasis,
    schedule: &Schedule,
    psi0: &StateVector,
    opts: &EvolveOptions,
) -> Result<StateVector, Error> {
    let mut snaps = evolve_generator(
        basis.dimension(),
        schedule,
        |params| GaugeMatrix::new(basis, params),
        psi0,
        &[schedule.steps()],
        opts,
    )?;
    Ok(snaps.pop().expect("one snapshot requested").1)
}

/// Snapshots at `sample_count` evenly spaced points of the step grid, from
/// `theta = 0` (the input state) to `theta = pi` (equal to [`evolve`]).
/// Snapshot `k` is taken after `round(k * steps / (sample_count - 1))`
/// steps; its reported `theta` is the exact value there.
pub fn evolve_trajectory(
    basis: &IsBasis,
    schedule: &Schedule,
    psi0: &StateVector,
    sample_count: usize,
    opts: &EvolveOptions,
) -> Result<Vec<(f64, StateVector)>, Error> {
    if sample_count < 2 {
        return Err(Error::InvalidParameter("trajectory needs at least 2 samples"));
    }
    let steps = schedule.steps();
    let marks: Vec<usize> = (0..sample_count)
        .map(|k| ((k * steps) as f64 / (sample_count - 1) as f64).round() as usize)
        .collect();
    evolve_generator(
        basis.dimension(),
        schedule,
        |params| GaugeMatrix::new(basis, params),
        psi0,
        &marks,
        opts,
    )
}

/// Midpoint-exponential integration of `d psi/dt = i A(t) psi` for any
/// Hermitian generator built from the schedule's gauge parameters.
///
/// `marks` lists step counts (non-decreasing) after which a snapshot is
/// recorded as `(theta, state)`.
pub fn evolve_generator<O, F>(
    dim: usize,
    schedule: &Schedule,
    mut generator: F,
    psi0: &StateVector,
    marks: &[usize],
    opts: &EvolveOptions,
) -> Result<Vec<(f64, StateVector)>, Error>
where
    O: HermitianOperator,
    F: FnMut(&GaugeParams) -> O,
{
    if psi0.dimension() != dim {
        return Err(Error::InvalidParameter("state dimension does not match the basis"));
    }
    let steps = schedule.steps();
    if marks.windows(2).any(|w| w[0] > w[1]) || marks.last().is_some_and(|&m| m > steps) {
        return Err(Error::InvalidParameter("snapshot marks must be sorted and within the step count"));
    }
    let h = schedule.step_size();
    let use_dense = match opts.propagator {
        Propagator::Dense => true,
        Propagator::Krylov => false,
        Propagator::Auto => dim <= opts.dense_max_dim,
    };

    let mut psi = psi0.amplitudes.clone();
    let mut next = vec![C64::new(0.0, 0.0); dim];
    let mut ws = KrylovWorkspace::default();
    let mut snapshots = Vec::with_capacity(marks.len());
    let mut mark_iter = marks.iter().peekable();

    for step in 0..=steps {
        while mark_iter.peek().is_some_and(|&&m| m == step) {
            mark_iter.next();
            let t = step as f64 * h;
            let snap = StateVector {
                amplitudes: psi.clone(),
            };
            check_norm(&snap, opts.norm_tolerance)?;
            snapshots.push((schedule.theta_at(t), snap));
        }
        if step == steps {
            break;
        }
        let params = schedule.params_at((step as f64 + 0.5) * h);
        let op = generator(&params);
        if use_dense {
            dense_step(&op, h, &psi, &mut next)?;
        } else {
            match expm_apply(&op, h, &psi, &mut next, &mut ws, &opts.krylov) {
                Ok(_) => {}
                Err(Error::KrylovNotConverged(_)) if dim <= opts.dense_fallback_max_dim => {
                    dense_step(&op, h, &psi, &mut next)?;
                }
                Err(e) => return Err(e),
            }
        }
        core::mem::swap(&mut psi, &mut next);
    }
    Ok(snapshots)
}

fn dense_step(op: &impl HermitianOperator, h: f64, psi: &[C64], out: &mut [C64]) -> Result<(), Error> {
    let eig = DenseMatrix::from_operator(op).eigh()?;
    eig.exp_i_apply(h, psi, out);
    Ok(())
}

fn check_norm(psi: &StateVector, tolerance: f64) -> Result<(), Error> {
    let drift = (psi.norm() - 1.0).abs();
    if drift < tolerance {
        Ok(())
    } else {
        Err(Error::NormDrift { drift, tolerance })
    }
}
