//! Measurements on final states and ensemble statistics.

use alloc::vec::Vec;

use crate::basis::IsBasis;
use crate::dynamics::{evolve, initial_state, EvolveOptions, Schedule, ScheduleSpec, StateVector};
use crate::graph::Graph;
use crate::mis::{exact_mis, MisResult};
use crate::Error;

/// Probability-weighted mean independent-set size `sum_j |a_j|^2 N_j`.
pub fn mean_size(psi: &StateVector, basis: &IsBasis) -> f64 {
    psi.amplitudes()
        .iter()
        .zip(basis.sizes())
        .map(|(a, &s)| a.norm_sqr() * s as f64)
        .sum()
}

/// `mean_size / alpha`.
pub fn ratio(psi: &StateVector, basis: &IsBasis, mis: &MisResult) -> f64 {
    mean_size(psi, basis) / mis.alpha as f64
}

/// Total probability on sets of size `alpha`.
pub fn mis_probability(psi: &StateVector, basis: &IsBasis, alpha: usize) -> f64 {
    psi.amplitudes()
        .iter()
        .zip(basis.sizes())
        .filter(|(_, &s)| s as usize == alpha)
        .map(|(a, _)| a.norm_sqr())
        .sum()
}

/// Result of annealing one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealOutcome {
    pub schedule: Schedule,
    pub dimension: usize,
    pub mis: MisResult,
    pub mean_size: f64,
    pub ratio: f64,
    pub mis_probability: f64,
    pub final_norm: f64,
}

/// Basis, exact MIS and a full sweep for one graph.
pub fn anneal(
    g: &Graph,
    spec: &ScheduleSpec,
    basis_cap: usize,
    opts: &EvolveOptions,
) -> Result<AnnealOutcome, Error> {
    let schedule = spec.for_vertices(g.n())?;
    let basis = IsBasis::build_capped(g, basis_cap)?;
    anneal_on_basis(g, &basis, &schedule, opts)
}

pub fn anneal_on_basis(
    g: &Graph,
    basis: &IsBasis,
    schedule: &Schedule,
    opts: &EvolveOptions,
) -> Result<AnnealOutcome, Error> {
    let mis = exact_mis(g);
    let psi = evolve(basis, schedule, &initial_state(basis), opts)?;
    let mean = mean_size(&psi, basis);
    Ok(AnnealOutcome {
        schedule: *schedule,
        dimension: basis.dimension(),
        mis,
        mean_size: mean,
        ratio: mean / mis.alpha as f64,
        mis_probability: mis_probability(&psi, basis, mis.alpha),
        final_norm: psi.norm(),
    })
}

/// Mean and spread of a sample of ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    /// Population variance (divides by `count`).
    pub variance: f64,
    /// Standard error of the mean from the sample variance; zero for a
    /// single value.
    pub std_error: f64,
}

impl SampleStats {
    /// Summation runs in slice order, so equal inputs give equal bits.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let variance = ss / count as f64;
        let std_error = if count > 1 {
            (ss / (count - 1) as f64 / count as f64).sqrt()
        } else {
            0.0
        };
        Some(Self {
            count,
            mean,
            variance,
            std_error,
        })
    }
}

/// Whether `values` never decreases by more than `slack`.
pub fn is_non_decreasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] >= w[0] - slack)
}

/// Whether `values` never increases by more than `slack`.
pub fn is_non_increasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= w[0] + slack)
}

/// Collects per-member ratios from outcomes, skipping failures.
pub fn ratios<'a, I>(outcomes: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a AnnealOutcome>,
{
    outcomes.into_iter().map(|o| o.ratio).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, edgeless};
    use crate::C64;
    use alloc::vec;

    #[test]
    fn mean_size_examples() {
        let b = IsBasis::build(&complete(3).unwrap()).unwrap();
        let mis = exact_mis(&complete(3).unwrap());
        let empty = initial_state(&b);
        assert_eq!(mean_size(&empty, &b), 0.0);
        assert_eq!(ratio(&empty, &b, &mis), 0.0);
        let uniform = StateVector::from_amplitudes(vec![C64::new(0.5, 0.0); 4]).unwrap();
        assert!((mean_size(&uniform, &b) - 0.75).abs() < 1e-15);
        assert!((ratio(&uniform, &b, &mis) - 0.75).abs() < 1e-15);
        let mut on_mis = vec![C64::new(0.0, 0.0); 4];
        on_mis[2] = C64::new(0.0, 1.0);
        let on_mis = StateVector::from_amplitudes(on_mis).unwrap();
        assert_eq!(mean_size(&on_mis, &b), 1.0);
        assert_eq!(ratio(&on_mis, &b, &mis), 1.0);
        assert_eq!(mis_probability(&on_mis, &b, 1), 1.0);
    }

    #[test]
    fn stats() {
        let one = SampleStats::from_values(&[0.7]).unwrap();
        assert_eq!((one.mean, one.variance, one.std_error), (0.7, 0.0, 0.0));
        let s = SampleStats::from_values(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        assert_eq!(s.variance, 1.25);
        assert!((s.std_error - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert!(SampleStats::from_values(&[]).is_none());
    }

    #[test]
    fn monotonicity_helpers() {
        assert!(is_non_decreasing(&[0.1, 0.1, 0.2], 0.0));
        assert!(!is_non_decreasing(&[0.1, 0.09], 0.0));
        assert!(is_non_increasing(&[0.3, 0.2, 0.2], 0.0));
    }

    #[test]
    fn anneal_edgeless() {
        let g = edgeless(3).unwrap();
        let spec = ScheduleSpec {
            run_time: crate::dynamics::RunTime::Total(200.0),
            ..Default::default()
        };
        let out = anneal(&g, &spec, 1000, &EvolveOptions::default()).unwrap();
        assert!(out.ratio >= 0.999);
        assert_eq!(out.mis.alpha, 3);
    }
}
