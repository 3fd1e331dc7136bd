//! Instantaneous spectrum of `A(theta)`: gap curves, minimum-gap refinement
//! and exponential fits of minimum gaps.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::IsBasis;
use crate::gauge::{GaugeMatrix, GaugeParams};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::lanczos::{distinct_levels, lowest_distinct_eigenvalues, LanczosOptions};
use crate::Error;

/// Eigensolver selection for a gap evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenPath {
    /// Dense up to [`GapScanOptions::dense_max_dim`], Lanczos above.
    Auto,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapScanOptions {
    pub omega_phi: f64,
    /// `dtheta/dt` inside `A`; zero reproduces the slow-sweep limit.
    pub omega_theta: f64,
    pub grid_points: usize,
    pub path: EigenPath,
    pub dense_max_dim: usize,
    /// Golden-section refinement of the grid minimum.
    pub refine: bool,
    pub lanczos: LanczosOptions,
}

impl Default for GapScanOptions {
    fn default() -> Self {
        Self {
            omega_phi: 1.0,
            omega_theta: 0.0,
            grid_points: 201,
            path: EigenPath::Auto,
            dense_max_dim: 256,
            refine: true,
            lanczos: LanczosOptions::default(),
        }
    }
}

/// Gap of `A(theta)` over a uniform grid of `[0, pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCurve {
    pub dimension: usize,
    pub thetas: Vec<f64>,
    pub lambda0: Vec<f64>,
    pub lambda1: Vec<f64>,
    pub gap: Vec<f64>,
    /// Never above any grid gap.
    pub min_gap: f64,
    pub theta_at_min: f64,
}

/// Lowest two distinct eigenvalues of `A(theta)`.
pub fn lowest_two(basis: &IsBasis, params: &GaugeParams, opts: &GapScanOptions) -> Result<(f64, f64), Error> {
    let dim = basis.dimension();
    let dense = match opts.path {
        EigenPath::Dense => true,
        EigenPath::Lanczos => false,
        EigenPath::Auto => dim <= opts.dense_max_dim,
    };
    let op = GaugeMatrix::new(basis, params);
    let levels = if dense {
        let values = DenseMatrix::from_operator(&op).eigvalsh()?;
        distinct_levels(&values, opts.lanczos.distinct_tol, 2)
    } else {
        lowest_distinct_eigenvalues(&op.real_form(), 2, &opts.lanczos)?
    };
    match levels[..] {
        [l0, l1] => Ok((l0, l1)),
        _ => Err(Error::EigenNotConverged("no second distinct eigenvalue")),
    }
}

/// Gap between the two lowest distinct levels at one angle.
pub fn gap_at(basis: &IsBasis, theta: f64, opts: &GapScanOptions) -> Result<f64, Error> {
    let params = GaugeParams::new(theta, opts.omega_phi, opts.omega_theta)?;
    let (l0, l1) = lowest_two(basis, &params, opts)?;
    Ok(l1 - l0)
}

/// Scans the gap over `grid_points` evenly spaced angles including both
/// endpoints and refines the minimum by golden-section search between the
/// neighbours of the smallest grid value.
pub fn gap_scan(basis: &IsBasis, opts: &GapScanOptions) -> Result<GapCurve, Error> {
    if basis.dimension() < 2 {
        return Err(Error::InvalidParameter("gap scan needs a basis of dimension at least 2"));
    }
    if opts.grid_points < 2 {
        return Err(Error::InvalidParameter("gap scan needs at least 2 grid points"));
    }
    let k = opts.grid_points;
    let thetas: Vec<f64> = (0..k)
        .map(|i| if i == k - 1 { PI } else { PI * i as f64 / (k - 1) as f64 })
        .collect();
    let mut lambda0 = Vec::with_capacity(k);
    let mut lambda1 = Vec::with_capacity(k);
    let mut gap = Vec::with_capacity(k);
    for &theta in &thetas {
        let params = GaugeParams::new(theta, opts.omega_phi, opts.omega_theta)?;
        let (l0, l1) = lowest_two(basis, &params, opts)?;
        lambda0.push(l0);
        lambda1.push(l1);
        gap.push(l1 - l0);
    }

    let (imin, &grid_min) = gap
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let mut min_gap = grid_min;
    let mut theta_at_min = thetas[imin];
    if opts.refine {
        let lo = thetas[imin.saturating_sub(1)];
        let hi = thetas[(imin + 1).min(k - 1)];
        let (theta, value) = golden_section_min(|t| gap_at(basis, t, opts), lo, hi, 1e-9)?;
        if value < min_gap {
            min_gap = value;
            theta_at_min = theta;
        }
    }

    Ok(GapCurve {
        dimension: basis.dimension(),
        thetas,
        lambda0,
        lambda1,
        gap,
        min_gap,
        theta_at_min,
    })
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`,
/// stopping when the bracket is shorter than `tol`. Returns the best point
/// evaluated.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64), Error>
where
    F: FnMut(f64) -> Result<f64, Error>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    Ok(best)
}

/// Least-squares line through `(n, ln gap)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGapFit {
    pub intercept: f64,
    pub slope: f64,
    /// Largest `|ln gap - (intercept + slope n)|` over the input.
    pub max_residual: f64,
}

pub fn fit_log_gap(points: &[(f64, f64)]) -> Result<LogGapFit, Error> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if let Some(&(_, g)) = points.iter().find(|p| p.1.is_nan() || p.1 <= 0.0) {
        return Err(Error::NonPositiveGap(g));
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1.ln()).sum::<f64>() / count;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("log-gap fit needs at least two distinct sizes"));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1.ln() - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_residual = points
        .iter()
        .map(|p| (p.1.ln() - intercept - slope * p.0).abs())
        .fold(0.0, f64::max);
    Ok(LogGapFit {
        intercept,
        slope,
        max_residual,
    })
}
