//! CSV and JSON output records.

use std::fs;
use std::path::Path;

use adiamis_core::basis::IsBasis;
use adiamis_core::dynamics::StateVector;
use adiamis_core::spectra::GapCurve;
use serde::Serialize;

use crate::CliError;

/// Probabilities below this are left out of trajectory dumps.
pub const TRAJECTORY_CUTOFF: f64 = 1e-9;

/// One anneal, as written to the per-run CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub n: usize,
    pub m: usize,
    pub generator: String,
    pub seed: u64,
    pub alpha: usize,
    pub mean_size: f64,
    pub ratio: f64,
    pub mis_probability: f64,
    /// Wall-clock time; only filled when timing is requested, so that
    /// untimed outputs are reproducible byte for byte.
    pub runtime_ms: Option<u64>,
}

#[derive(Serialize)]
struct BasisRow {
    index: usize,
    mask_hex: String,
    size: u32,
}

#[derive(Serialize)]
struct TrajectoryRow {
    theta: f64,
    index: usize,
    prob: f64,
}

#[derive(Serialize)]
struct GapRow {
    theta: f64,
    lambda0: f64,
    lambda1: f64,
    gap: f64,
}

/// Summary of a gap scan.
#[derive(Debug, Clone, Serialize)]
pub struct GapSummary {
    pub manifest: String,
    pub n: usize,
    pub dimension: usize,
    pub min_gap: f64,
    pub theta_at_min: f64,
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| CliError::io("csv output", e.into_error()))
}

pub fn basis_csv(basis: &IsBasis) -> Result<Vec<u8>, CliError> {
    to_csv(basis.states().iter().zip(basis.sizes()).enumerate().map(|(index, (&mask, &size))| BasisRow {
        index,
        mask_hex: format!("{mask:x}"),
        size,
    }))
}

pub fn trajectory_csv(snapshots: &[(f64, StateVector)]) -> Result<Vec<u8>, CliError> {
    to_csv(snapshots.iter().flat_map(|(theta, psi)| {
        psi.probabilities()
            .into_iter()
            .enumerate()
            .filter(|&(_, prob)| prob >= TRAJECTORY_CUTOFF)
            .map(move |(index, prob)| TrajectoryRow {
                theta: *theta,
                index,
                prob,
            })
    }))
}

pub fn gap_csv(curve: &GapCurve) -> Result<Vec<u8>, CliError> {
    to_csv((0..curve.thetas.len()).map(|i| GapRow {
        theta: curve.thetas[i],
        lambda0: curve.lambda0[i],
        lambda1: curve.lambda1[i],
        gap: curve.gap[i],
    }))
}

pub fn runs_csv<'a>(records: impl IntoIterator<Item = &'a RunRecord>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut any = false;
    for r in records {
        w.serialize(r)?;
        any = true;
    }
    if !any {
        w.write_record([
            "n",
            "m",
            "generator",
            "seed",
            "alpha",
            "mean_size",
            "ratio",
            "mis_probability",
            "runtime_ms",
        ])?;
    }
    w.into_inner().map_err(|e| CliError::io("csv output", e.into_error()))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("output records serialize");
    out.push(b'\n');
    out
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))
}
