//! The spin Hamiltonian `H0`, the gauge matrix `A(theta)` on the
//! independent-set basis, and an independent finite-difference Berry
//! connection built from explicitly rotated spin states.
//!
//! Basis state `j` is the product state with vertices of `states[j]` in
//! `|u_r>` and every other vertex in `|d_r>`. With `N_j` the set size:
//!
//! ```text
//! A[j, j]   = -(N_j sin^2(theta/2) + (n - N_j) cos^2(theta/2)) * dphi/dt
//! A[hi, lo] = sin(theta)/2 * dphi/dt + i/2 * dtheta/dt      (hop lo -> hi)
//! A[lo, hi] = conj(A[hi, lo])
//! ```
//!
//! The row holding the larger set carries `+i/2 dtheta/dt`; this is what
//! `i <u_r| d/dt |d_r>` evaluates to with the phases of `|u_r>`, `|d_r>`
//! used here. All other entries vanish because product states that differ in
//! two or more spins have an orthogonal factor left over.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::IsBasis;
use crate::graph::{bit, Graph};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::{HermitianOperator, SymmetricOperator};
use crate::{Error, C64};

/// Angle and rates entering `A(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeParams {
    pub theta: f64,
    /// `dphi/dt`.
    pub omega_phi: f64,
    /// `dtheta/dt`.
    pub omega_theta: f64,
}

impl GaugeParams {
    pub fn new(theta: f64, omega_phi: f64, omega_theta: f64) -> Result<Self, Error> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter("theta must lie in [0, pi]"));
        }
        if !(omega_phi > 0.0 && omega_phi.is_finite()) {
            return Err(Error::InvalidParameter("omega_phi must be positive"));
        }
        if !(omega_theta >= 0.0 && omega_theta.is_finite()) {
            return Err(Error::InvalidParameter("omega_theta must be non-negative"));
        }
        Ok(Self {
            theta,
            omega_phi,
            omega_theta,
        })
    }

    /// Diagonal entry for a state with `size` up-spins out of `n`.
    pub fn diagonal(&self, n: usize, size: usize) -> f64 {
        let half = 0.5 * self.theta;
        let (s, c) = half.sin_cos();
        -(size as f64 * s * s + (n - size) as f64 * c * c) * self.omega_phi
    }

    /// Entry `A[hi, lo]` of a hop from the smaller to the larger set.
    pub fn hop(&self) -> C64 {
        C64::new(0.5 * self.theta.sin() * self.omega_phi, 0.5 * self.omega_theta)
    }
}

/// Hermitian matrix stored as a real diagonal plus strictly lower entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHermitian {
    diagonal: Vec<f64>,
    /// `(row, col, value)` with `row > col`; the upper triangle is implied.
    lower: Vec<(u32, u32, C64)>,
}

impl SparseHermitian {
    pub fn new(diagonal: Vec<f64>, lower: Vec<(u32, u32, C64)>) -> Result<Self, Error> {
        let dim = diagonal.len();
        if lower
            .iter()
            .any(|&(r, c, _)| r <= c || r as usize >= dim)
        {
            return Err(Error::InvalidParameter(
                "off-diagonal entries must be strictly lower and in range",
            ));
        }
        Ok(Self { diagonal, lower })
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn lower(&self) -> &[(u32, u32, C64)] {
        &self.lower
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dimension());
        for (i, &d) in self.diagonal.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        for &(r, c, v) in &self.lower {
            m[(r as usize, c as usize)] += v;
            m[(c as usize, r as usize)] += v.conj();
        }
        m
    }

    /// Adds `shift * I`.
    pub fn shifted(mut self, shift: f64) -> Self {
        self.diagonal.iter_mut().for_each(|d| *d += shift);
        self
    }
}

impl HermitianOperator for SparseHermitian {
    fn dim(&self) -> usize {
        self.dimension()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for ((yi, xi), d) in y.iter_mut().zip(x).zip(&self.diagonal) {
            *yi = xi * d;
        }
        for &(r, c, v) in &self.lower {
            let (r, c) = (r as usize, c as usize);
            y[r] += v * x[c];
            y[c] += v.conj() * x[r];
        }
    }
}

/// Matrix-free view of `A(theta)` on a basis. Every hop carries the same
/// value, so only one complex number and a per-size diagonal table are kept.
#[derive(Debug, Clone)]
pub struct GaugeMatrix<'a> {
    basis: &'a IsBasis,
    diag_by_size: Vec<f64>,
    hop: C64,
    shift: f64,
}

impl<'a> GaugeMatrix<'a> {
    pub fn new(basis: &'a IsBasis, params: &GaugeParams) -> Self {
        let n = basis.n();
        let diag_by_size = (0..=n).map(|k| params.diagonal(n, k)).collect();
        Self {
            basis,
            diag_by_size,
            hop: params.hop(),
            shift: 0.0,
        }
    }

    /// Same matrix plus `shift * I`.
    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    pub fn hop_value(&self) -> C64 {
        self.hop
    }

    fn diag(&self, j: usize) -> f64 {
        self.diag_by_size[self.basis.sizes()[j] as usize] + self.shift
    }

    /// Real symmetric matrix unitarily equivalent to `A`.
    ///
    /// Hops always join a set of size `k` to one of size `k + 1`, so with
    /// `A[hi, lo] = |a| e^{i chi}` the diagonal unitary
    /// `D = diag(e^{-i N_j chi})` gives `D A D^dagger` with every hop equal
    /// to `|a|`. Both matrices share their spectrum.
    pub fn real_form(&self) -> RealGauge<'a> {
        RealGauge {
            basis: self.basis,
            diag_by_size: self.diag_by_size.iter().map(|d| d + self.shift).collect(),
            hop: self.hop.norm(),
        }
    }
}

impl HermitianOperator for GaugeMatrix<'_> {
    fn dim(&self) -> usize {
        self.basis.dimension()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for (j, (yj, xj)) in y.iter_mut().zip(x).enumerate() {
            *yj = xj * self.diag(j);
        }
        let a = self.hop;
        let a_conj = a.conj();
        for &(lo, hi) in self.basis.hops() {
            let (lo, hi) = (lo as usize, hi as usize);
            y[hi] += a * x[lo];
            y[lo] += a_conj * x[hi];
        }
    }
}

/// See [`GaugeMatrix::real_form`].
#[derive(Debug, Clone)]
pub struct RealGauge<'a> {
    basis: &'a IsBasis,
    diag_by_size: Vec<f64>,
    hop: f64,
}

impl SymmetricOperator for RealGauge<'_> {
    fn dim(&self) -> usize {
        self.basis.dimension()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let sizes = self.basis.sizes();
        for ((yj, xj), &s) in y.iter_mut().zip(x).zip(sizes) {
            *yj = xj * self.diag_by_size[s as usize];
        }
        let a = self.hop;
        for &(lo, hi) in self.basis.hops() {
            let (lo, hi) = (lo as usize, hi as usize);
            y[hi] += a * x[lo];
            y[lo] += a * x[hi];
        }
    }
}

/// Materializes `A(theta)` on the basis.
pub fn assemble_gauge(basis: &IsBasis, params: &GaugeParams) -> SparseHermitian {
    let n = basis.n();
    let diagonal = basis
        .sizes()
        .iter()
        .map(|&s| params.diagonal(n, s as usize))
        .collect();
    let a = params.hop();
    let lower = basis.hops().iter().map(|&(lo, hi)| (hi, lo, a)).collect();
    SparseHermitian { diagonal, lower }
}

/// `H0 = delta * sum_edges (s_i + s_j + s_i s_j)` for the spin configuration
/// `config` (bit set means `sigma_z = +1`).
pub fn h0_energy(config: u64, g: &Graph, delta: f64) -> f64 {
    let spin = |v: usize| if config & bit(v) != 0 { 1.0 } else { -1.0 };
    delta
        * g.edges()
            .iter()
            .map(|&(i, j)| {
                let (si, sj) = (spin(i), spin(j));
                si + sj + si * sj
            })
            .sum::<f64>()
}

/// Ground level, its degeneracy, and the first excited level of `H0` from
/// exhaustive evaluation of all `2^n` spin configurations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H0Spectrum {
    pub ground: f64,
    pub degeneracy: u64,
    /// `None` when every configuration is degenerate (no edges).
    pub first_excited: Option<f64>,
}

/// Largest vertex count accepted by [`h0_spectrum`].
pub const H0_EXHAUSTIVE_MAX_N: usize = 24;

pub fn h0_spectrum(g: &Graph, delta: f64) -> Result<H0Spectrum, Error> {
    if g.n() > H0_EXHAUSTIVE_MAX_N {
        return Err(Error::DimensionLimit {
            what: "exhaustive H0 scan (vertices)",
            dimension: g.n(),
            limit: H0_EXHAUSTIVE_MAX_N,
        });
    }
    let mut ground = f64::INFINITY;
    let mut degeneracy = 0u64;
    let mut excited = f64::INFINITY;
    for config in 0..(1u64 << g.n()) {
        let e = h0_energy(config, g, delta);
        if e < ground {
            if ground.is_finite() {
                excited = ground;
            }
            ground = e;
            degeneracy = 1;
        } else if e == ground {
            degeneracy += 1;
        } else if e < excited {
            excited = e;
        }
    }
    Ok(H0Spectrum {
        ground,
        degeneracy,
        first_excited: excited.is_finite().then_some(excited),
    })
}

/// Gap of the edgeless-graph gauge matrix, which is a sum of identical
/// single-spin terms. With the `dtheta/dt` term kept each spin sees a field
/// of strength `sqrt(omega_phi^2 + omega_theta^2)`; dropping it leaves
/// `omega_phi`. The identity part only adds a global phase.
pub fn edgeless_reference_gap(params: &GaugeParams, include_theta_rate: bool) -> f64 {
    if include_theta_rate {
        params.omega_phi.hypot(params.omega_theta)
    } else {
        params.omega_phi
    }
}

/// Single-spin rotation `V = [[cos(t/2), e^{-i phi} sin(t/2)],
/// [e^{i phi} sin(t/2), -cos(t/2)]]`, an involution.
pub fn rotation_matrix(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    [
        [C64::new(c, 0.0), C64::from_polar(s, -phi)],
        [C64::from_polar(s, phi), C64::new(-c, 0.0)],
    ]
}

/// `|u_r> = cos(t/2)|u> + sin(t/2) e^{i phi}|d>`, the first column of `V`.
pub fn rotated_up(theta: f64, phi: f64) -> [C64; 2] {
    let v = rotation_matrix(theta, phi);
    [v[0][0], v[1][0]]
}

/// `|d_r> = sin(t/2)|u> - cos(t/2) e^{i phi}|d>`.
///
/// The second column of `V` is `e^{-i phi} |d_r>`; the factor `e^{i phi}`
/// is restored here because the diagonal of the Berry connection depends on
/// this phase choice.
pub fn rotated_down(theta: f64, phi: f64) -> [C64; 2] {
    let v = rotation_matrix(theta, phi);
    let phase = C64::from_polar(1.0, phi);
    [v[0][1] * phase, v[1][1] * phase]
}

/// Largest basis dimension accepted by [`berry_connection_fd`].
pub const FD_MAX_DIMENSION: usize = 4096;
/// Largest vertex count accepted by [`berry_connection_fd`].
pub const FD_MAX_VERTICES: usize = 12;

/// Finite-difference Berry connection `i <E_a| d/dt |E_b>` on the basis.
///
/// The states `|E_a(t)>` are tensor products of [`rotated_up`] and
/// [`rotated_down`] evaluated along `theta(t) = theta + theta_rate t`,
/// `phi(t) = phi + phi_rate t`; the derivative at `t = 0` is a central
/// difference with step `fd_step`. Inner products of product states are the
/// products of the single-spin inner products, which is how the full
/// `2^n`-component overlaps are evaluated. All pairs are returned, including
/// those more than one spin apart.
pub fn berry_connection_fd(
    basis: &IsBasis,
    theta: f64,
    phi: f64,
    theta_rate: f64,
    phi_rate: f64,
    fd_step: f64,
) -> Result<DenseMatrix, Error> {
    let dim = basis.dimension();
    let n = basis.n();
    if dim > FD_MAX_DIMENSION {
        return Err(Error::DimensionLimit {
            what: "finite-difference Berry connection",
            dimension: dim,
            limit: FD_MAX_DIMENSION,
        });
    }
    if n > FD_MAX_VERTICES {
        return Err(Error::DimensionLimit {
            what: "finite-difference Berry connection (vertices)",
            dimension: n,
            limit: FD_MAX_VERTICES,
        });
    }
    if fd_step.is_nan() || fd_step <= 0.0 {
        return Err(Error::InvalidParameter("fd_step must be positive"));
    }

    let single = |t: f64| {
        let (th, ph) = (theta + theta_rate * t, phi + phi_rate * t);
        // index 0: |d_r> (vertex outside the set), 1: |u_r> (inside)
        [rotated_down(th, ph), rotated_up(th, ph)]
    };
    let now = single(0.0);
    let overlap = |x: &[C64; 2], y: &[C64; 2]| x[0].conj() * y[0] + x[1].conj() * y[1];
    // table[sign][a][b] = <s_a(0)|s_b(+-h)>
    let mut table = [[[C64::new(0.0, 0.0); 2]; 2]; 2];
    for (sign, t) in [fd_step, -fd_step].into_iter().enumerate() {
        let later = single(t);
        for a in 0..2 {
            for b in 0..2 {
                table[sign][a][b] = overlap(&now[a], &later[b]);
            }
        }
    }

    let product = |sign: usize, a: u64, b: u64| {
        let t = &table[sign];
        let both = (a & b).count_ones() as i32;
        let only_a = (a & !b).count_ones() as i32;
        let only_b = (!a & b).count_ones() as i32;
        let neither = n as i32 - both - only_a - only_b;
        t[0][0].powi(neither) * t[1][1].powi(both) * t[1][0].powi(only_a) * t[0][1].powi(only_b)
    };

    let states = basis.states();
    let mut m = DenseMatrix::zeros(dim);
    let i_over = C64::new(0.0, 1.0 / (2.0 * fd_step));
    for (r, &a) in states.iter().enumerate() {
        for (c, &b) in states.iter().enumerate() {
            m[(r, c)] = i_over * (product(0, a, b) - product(1, a, b));
        }
    }
    Ok(m)
}

/// Largest modulus of the entries of `fd` between states two or more spins
/// apart.
pub fn max_non_hop_coupling(basis: &IsBasis, fd: &DenseMatrix) -> f64 {
    let states = basis.states();
    let mut worst: f64 = 0.0;
    for (r, &a) in states.iter().enumerate() {
        for (c, &b) in states.iter().enumerate() {
            if (a ^ b).count_ones() >= 2 {
                worst = worst.max(fd[(r, c)].norm());
            }
        }
    }
    worst
}

/// Spin-rotated `sigma_z`, `tau = V sigma_z V^{-1}`, as a 2x2 matrix.
pub fn rotated_sigma_z(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let v = rotation_matrix(theta, phi);
    let mut tau = [[C64::new(0.0, 0.0); 2]; 2];
    let sz = [1.0, -1.0];
    // V is its own inverse
    for i in 0..2 {
        for j in 0..2 {
            tau[i][j] = (0..2).map(|k| v[i][k] * sz[k] * v[k][j]).sum();
        }
    }
    tau
}

/// Dense gauge matrix, for small validation problems.
pub fn dense_gauge(basis: &IsBasis, params: &GaugeParams) -> DenseMatrix {
    assemble_gauge(basis, params).to_dense()
}
