//! Lanczos iteration with full reorthogonalization for the lowest distinct
//! eigenvalues of a real symmetric operator.
//!
//! In exact arithmetic a Krylov space holds one direction per eigenspace, so
//! degenerate levels show up once, which is what a gap to the next
//! *distinct* level needs. When the space becomes invariant before the
//! requested levels converge, the iteration continues from a fresh random
//! direction orthogonal to everything seen so far.

use alloc::vec;
use alloc::vec::Vec;

use super::tridiag::tridiagonal_eigen;
use super::{dot, norm, SymmetricOperator};
use crate::rng::Xoshiro256StarStar;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Cap on the Krylov dimension.
    pub max_iter: usize,
    /// Residual tolerance, relative to `max(1, |lambda|)`.
    pub tol: f64,
    /// Seed of the random start vector.
    pub seed: u64,
    /// Ritz values are checked every this many iterations.
    pub check_every: usize,
    /// Relative tolerance under which two eigenvalues count as equal.
    pub distinct_tol: f64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_iter: 600,
            tol: 1e-9,
            seed: 0x5eed,
            check_every: 8,
            distinct_tol: 1e-10,
        }
    }
}

/// Groups ascending values into distinct levels, keeping the first member
/// of each run that lies within `rel_tol * max(1, |level|)` of its leader.
pub fn distinct_levels(sorted: &[f64], rel_tol: f64, count: usize) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    for &v in sorted {
        match out.last() {
            Some(&last) if v - last <= rel_tol * last.abs().max(1.0) => {}
            _ => {
                out.push(v);
                if out.len() == count {
                    break;
                }
            }
        }
    }
    out
}

/// Returns the `count` lowest distinct eigenvalues, ascending.
///
/// Fewer values are returned only when the operator has fewer distinct
/// eigenvalues.
pub fn lowest_distinct_eigenvalues(
    op: &impl SymmetricOperator,
    count: usize,
    opts: &LanczosOptions,
) -> Result<Vec<f64>, Error> {
    let dim = op.dim();
    let max_iter = opts.max_iter.min(dim).max(1);
    let mut rng = Xoshiro256StarStar::seed_from_u64(opts.seed);
    let mut basis: Vec<f64> = Vec::with_capacity(max_iter * dim);
    let mut alphas: Vec<f64> = Vec::with_capacity(max_iter);
    let mut betas: Vec<f64> = Vec::with_capacity(max_iter);

    let mut q = random_unit(&mut rng, dim, &basis);
    let mut w = vec![0.0; dim];
    let mut scale: f64 = 0.0;

    for j in 0..max_iter {
        basis.extend_from_slice(&q);
        op.apply(&q, &mut w);
        if j > 0 {
            let beta = betas[j - 1];
            let prev = &basis[(j - 1) * dim..j * dim];
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= beta * pi;
            }
        }
        let alpha = dot(&q, &w);
        for (wi, qi) in w.iter_mut().zip(&q) {
            *wi -= alpha * qi;
        }
        reorthogonalize(&mut w, &basis, dim);
        let beta = norm(&w);
        alphas.push(alpha);
        scale = scale.max(alpha.abs() + beta);

        let size = j + 1;
        let invariant = beta <= 1e-12 * scale.max(1.0);
        let exhausted = size == max_iter;
        if invariant || exhausted || size % opts.check_every == 0 {
            let tri = tridiagonal_eigen(&alphas, &betas, true)?;
            let converged = ritz_converged(&tri, beta, size, count, opts);
            if let Some(levels) = converged {
                return Ok(levels);
            }
            if exhausted {
                if size == dim {
                    // full space explored: Ritz values are eigenvalues
                    return Ok(distinct_levels(&tri.values, opts.distinct_tol, count));
                }
                return Err(Error::EigenNotConverged("Lanczos iteration cap reached"));
            }
        }

        if invariant {
            if size == dim {
                let tri = tridiagonal_eigen(&alphas, &betas, false)?;
                return Ok(distinct_levels(&tri.values, opts.distinct_tol, count));
            }
            q = random_unit(&mut rng, dim, &basis);
            betas.push(0.0);
        } else {
            for (qi, wi) in q.iter_mut().zip(&w) {
                *qi = wi / beta;
            }
            betas.push(beta);
        }
    }
    Err(Error::EigenNotConverged("Lanczos iteration cap reached"))
}

fn ritz_converged(
    tri: &super::tridiag::TridiagEigen,
    beta: f64,
    size: usize,
    count: usize,
    opts: &LanczosOptions,
) -> Option<Vec<f64>> {
    let mut levels: Vec<f64> = Vec::with_capacity(count);
    for i in 0..size {
        let value = tri.values[i];
        if let Some(&last) = levels.last() {
            if value - last <= opts.distinct_tol * last.abs().max(1.0) {
                continue;
            }
        }
        let residual = (beta * tri.vector_component(size - 1, i)).abs();
        if residual > opts.tol * value.abs().max(1.0) {
            return None;
        }
        levels.push(value);
        if levels.len() == count {
            return Some(levels);
        }
    }
    None
}

/// Two passes of classical Gram-Schmidt against the stored basis.
fn reorthogonalize(w: &mut [f64], basis: &[f64], dim: usize) {
    for _ in 0..2 {
        for v in basis.chunks_exact(dim) {
            let c = dot(v, w);
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi -= c * vi;
            }
        }
    }
}

fn random_unit(rng: &mut Xoshiro256StarStar, dim: usize, basis: &[f64]) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.next_f64() - 0.5).collect();
        reorthogonalize(&mut v, basis, dim);
        let nv = norm(&v);
        if nv > 1e-8 {
            for x in v.iter_mut() {
                *x /= nv;
            }
            return v;
        }
    }
}
