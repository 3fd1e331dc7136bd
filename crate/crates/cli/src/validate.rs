//! Self-checks of `H0` and the gauge matrix on one graph.

use adiamis_core::basis::IsBasis;
use adiamis_core::gauge::{
    berry_connection_fd, dense_gauge, h0_spectrum, max_non_hop_coupling, GaugeParams, FD_MAX_DIMENSION,
    FD_MAX_VERTICES,
};
use adiamis_core::graph::Graph;
use serde::Serialize;

use crate::CliError;

/// Largest allowed `|A - A_fd|` entry.
pub const GAUGE_TOLERANCE: f64 = 1e-6;
/// Largest allowed coupling between sets two or more vertices apart.
pub const NON_HOP_TOLERANCE: f64 = 1e-8;
const FD_STEP: f64 = 1e-5;

/// `(theta, phi, dtheta/dt, dphi/dt)` probes for the finite-difference check.
const PROBES: [(f64, f64, f64, f64); 5] = [
    (0.3, 0.0, 0.0, 1.0),
    (1.1, 0.7, 0.05, 0.5),
    (std::f64::consts::FRAC_PI_2, 1.9, 0.5, 2.0),
    (2.2, 3.1, 1.0, 1.0),
    (2.9, 5.0, 0.01, 3.0),
];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// `false` when the graph is too large for the check.
    pub ran: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        ran: true,
        detail,
    }
}

fn skipped(name: &'static str, detail: String) -> Check {
    Check {
        name,
        passed: true,
        ran: false,
        detail,
    }
}

pub fn validate(g: &Graph, delta: f64, basis_cap: usize) -> Result<ValidationReport, CliError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(CliError::Usage("delta must be positive".into()));
    }
    let basis = IsBasis::build_capped(g, basis_cap)?;
    let h0 = h0_spectrum(g, delta)?;
    let m = g.m() as f64;
    let mut checks = Vec::new();

    let ground = -m * delta;
    checks.push(check(
        "h0-ground-energy",
        h0.ground == ground,
        format!("ground {} (expected {ground})", h0.ground),
    ));
    checks.push(check(
        "h0-ground-degeneracy",
        h0.degeneracy == basis.dimension() as u64,
        format!(
            "{} ground configurations, {} independent sets",
            h0.degeneracy,
            basis.dimension()
        ),
    ));
    let excited = ground + 4.0 * delta;
    checks.push(match h0.first_excited {
        Some(e) => check("h0-first-excited", e == excited, format!("first excited {e} (expected {excited})")),
        None => check("h0-first-excited", g.m() == 0, "no excited level (edgeless graph)".into()),
    });

    if g.n() > FD_MAX_VERTICES || basis.dimension() > FD_MAX_DIMENSION {
        let why = format!(
            "needs n <= {FD_MAX_VERTICES} and dimension <= {FD_MAX_DIMENSION} (n = {}, dimension = {})",
            g.n(),
            basis.dimension()
        );
        checks.push(skipped("gauge-vs-finite-difference", why.clone()));
        checks.push(skipped("non-hop-coupling", why));
    } else {
        let mut worst_diff: f64 = 0.0;
        let mut worst_non_hop: f64 = 0.0;
        for &(theta, phi, theta_rate, phi_rate) in &PROBES {
            let fd = berry_connection_fd(&basis, theta, phi, theta_rate, phi_rate, FD_STEP)?;
            let exact = dense_gauge(&basis, &GaugeParams::new(theta, phi_rate, theta_rate)?);
            worst_diff = worst_diff.max(exact.max_abs_diff(&fd));
            worst_non_hop = worst_non_hop.max(max_non_hop_coupling(&basis, &fd));
        }
        checks.push(check(
            "gauge-vs-finite-difference",
            worst_diff < GAUGE_TOLERANCE,
            format!("max |A - A_fd| = {worst_diff:.3e} (tolerance {GAUGE_TOLERANCE:e})"),
        ));
        checks.push(check(
            "non-hop-coupling",
            worst_non_hop < NON_HOP_TOLERANCE,
            format!("max coupling beyond one hop = {worst_non_hop:.3e} (tolerance {NON_HOP_TOLERANCE:e})"),
        ));
    }

    Ok(ValidationReport {
        n: g.n(),
        m: g.m(),
        delta,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use adiamis_core::graph::{complete, edgeless, spider};

    #[test]
    fn spider_and_triangle_pass() {
        let r = validate(&spider(3).unwrap(), 1.0, 1 << 20).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checks[1].detail.starts_with("35 "));
        let k3 = validate(&complete(3).unwrap(), 1.0, 1 << 20).unwrap();
        assert!(k3.passed());
        assert!(k3.checks[1].detail.starts_with("4 "));
        assert!(validate(&edgeless(4).unwrap(), 2.0, 1 << 20).unwrap().passed());
    }

    #[test]
    fn large_graphs_skip_fd() {
        let r = validate(&edgeless(13).unwrap(), 1.0, 1 << 20).unwrap();
        assert!(r.passed());
        assert!(!r.checks[3].ran);
    }
}
