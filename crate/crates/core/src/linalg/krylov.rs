//! Krylov (Lanczos) approximation of `exp(i h A) v` for Hermitian `A`.

use alloc::vec::Vec;

use super::tridiag::tridiagonal_eigen;
use super::{cdot, cnorm, HermitianOperator};
use crate::{Error, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovOptions {
    /// Largest Krylov dimension tried before giving up.
    pub max_dim: usize,
    /// Absolute error target for a unit input vector.
    pub tol: f64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            max_dim: 40,
            tol: 1e-13,
        }
    }
}

/// Reusable buffers for [`expm_apply`].
#[derive(Debug, Default, Clone)]
pub struct KrylovWorkspace {
    basis: Vec<C64>,
    w: Vec<C64>,
    alphas: Vec<f64>,
    betas: Vec<f64>,
    coeff: Vec<C64>,
}

/// Writes `exp(i h A) v` into `out` and returns the Krylov dimension used.
///
/// The Lanczos vectors are kept fully orthogonal; the small exponential
/// `exp(i h T) e1` comes from the tridiagonal eigen-decomposition. The
/// iteration stops when `|beta_m [exp(i h T) e1]_m|` drops below the
/// tolerance, or exactly on an invariant subspace.
pub fn expm_apply(
    op: &impl HermitianOperator,
    h: f64,
    v: &[C64],
    out: &mut [C64],
    ws: &mut KrylovWorkspace,
    opts: &KrylovOptions,
) -> Result<usize, Error> {
    let dim = op.dim();
    let v_norm = cnorm(v);
    if v_norm == 0.0 {
        out.iter_mut().for_each(|o| *o = C64::new(0.0, 0.0));
        return Ok(0);
    }
    let max_m = opts.max_dim.min(dim).max(1);
    ws.basis.clear();
    ws.alphas.clear();
    ws.betas.clear();
    ws.w.resize(dim, C64::new(0.0, 0.0));
    ws.basis.extend(v.iter().map(|x| x / v_norm));

    let mut scale: f64 = 0.0;
    for j in 0..max_m {
        let (done, rest) = ws.basis.split_at(j * dim);
        let q = &rest[..dim];
        op.apply(q, &mut ws.w);
        if j > 0 {
            let beta = ws.betas[j - 1];
            let prev = &done[(j - 1) * dim..];
            for (wi, pi) in ws.w.iter_mut().zip(prev) {
                *wi -= pi * beta;
            }
        }
        let alpha = cdot(q, &ws.w).re;
        for (wi, qi) in ws.w.iter_mut().zip(q) {
            *wi -= qi * alpha;
        }
        for prev in ws.basis.chunks_exact(dim) {
            let c = cdot(prev, &ws.w);
            for (wi, pi) in ws.w.iter_mut().zip(prev) {
                *wi -= pi * c;
            }
        }
        let beta = cnorm(&ws.w);
        ws.alphas.push(alpha);
        scale = scale.max(alpha.abs() + beta);

        let m = j + 1;
        let invariant = beta <= 1e-14 * scale.max(1.0) || m == dim;
        if invariant || m >= 3 || m == max_m {
            let tri = tridiagonal_eigen(&ws.alphas, &ws.betas, true)?;
            ws.coeff.clear();
            for k in 0..m {
                let mut acc = C64::new(0.0, 0.0);
                for (i, &lambda) in tri.values.iter().enumerate() {
                    let weight = tri.vector_component(k, i) * tri.vector_component(0, i);
                    acc += C64::from_polar(weight, h * lambda);
                }
                ws.coeff.push(acc);
            }
            let estimate = if invariant {
                0.0
            } else {
                beta * ws.coeff[m - 1].norm()
            };
            if estimate <= opts.tol {
                for (i, o) in out.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for (k, c) in ws.coeff.iter().enumerate() {
                        acc += ws.basis[k * dim + i] * c;
                    }
                    *o = acc * v_norm;
                }
                return Ok(m);
            }
        }
        if m == max_m {
            break;
        }
        ws.betas.push(beta);
        let inv = 1.0 / beta;
        ws.basis.extend(ws.w.iter().map(|x| x * inv));
    }
    Err(Error::KrylovNotConverged(max_m))
}
