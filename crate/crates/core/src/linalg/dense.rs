//! Dense complex matrices and a Hermitian eigensolver.
//!
//! The solver reduces the matrix to Hermitian tridiagonal form with
//! Householder reflections, rotates the complex sub-diagonal onto the real
//! axis with a diagonal phase matrix, and finishes with the tridiagonal QL
//! iteration.

use alloc::vec;
use alloc::vec::Vec;

use super::tridiag::tridiagonal_eigen;
use super::HermitianOperator;
use crate::{Error, C64};

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
/// matrix; column `i` of `vectors` (row-major) belongs to `values[i]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Densifies any Hermitian operator column by column.
    pub fn from_operator(op: &impl HermitianOperator) -> Self {
        let dim = op.dim();
        let mut m = Self::zeros(dim);
        let mut e = vec![C64::new(0.0, 0.0); dim];
        let mut col = vec![C64::new(0.0, 0.0); dim];
        for j in 0..dim {
            e[j] = C64::new(1.0, 0.0);
            op.apply(&e, &mut col);
            for i in 0..dim {
                m[(i, j)] = col[i];
            }
            e[j] = C64::new(0.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest modulus of `A - A^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// Eigenvalues only (ascending). Only the lower triangle is read.
    pub fn eigvalsh(&self) -> Result<Vec<f64>, Error> {
        let (diag, off, _) = self.tridiagonalize(false);
        Ok(tridiagonal_eigen(&diag, &off, false)?.values)
    }

    /// Full eigen-decomposition. Only the lower triangle is read.
    pub fn eigh(&self) -> Result<HermitianEigen, Error> {
        let n = self.dim;
        let (diag, off, q) = self.tridiagonalize(true);
        let q = q.expect("requested");
        let tri = tridiagonal_eigen(&diag, &off, true)?;
        // vectors = Q * Z, Z real
        let mut vectors = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let qik = q[(i, k)];
                if qik == C64::new(0.0, 0.0) {
                    continue;
                }
                let zrow = &tri.vectors[k * n..(k + 1) * n];
                let out = &mut vectors.data[i * n..(i + 1) * n];
                for (o, &z) in out.iter_mut().zip(zrow) {
                    *o += qik * z;
                }
            }
        }
        Ok(HermitianEigen {
            values: tri.values,
            vectors,
        })
    }

    /// Householder reduction `A = Q T Q^dagger` with `T` real symmetric
    /// tridiagonal. Returns the diagonal, the (non-negative) sub-diagonal
    /// and, when asked, `Q` including the phase rotation.
    fn tridiagonalize(&self, want_q: bool) -> (Vec<f64>, Vec<f64>, Option<Self>) {
        let n = self.dim;
        let mut a = self.clone();
        // Hermitian-ize from the lower triangle
        for i in 0..n {
            a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
            for j in 0..i {
                let v = a[(i, j)];
                a[(j, i)] = v.conj();
            }
        }
        let mut q = if want_q { Some(Self::identity(n)) } else { None };
        let mut sub = vec![C64::new(0.0, 0.0); n.saturating_sub(1)];
        let mut v = vec![C64::new(0.0, 0.0); n];
        let mut p = vec![C64::new(0.0, 0.0); n];

        for k in 0..n.saturating_sub(2) {
            let start = k + 1;
            let sigma = (start..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
            if sigma == 0.0 {
                sub[k] = C64::new(0.0, 0.0);
                continue;
            }
            let x0 = a[(start, k)];
            let x0_abs = x0.norm();
            let phase = if x0_abs == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                x0 / x0_abs
            };
            let alpha = -phase * sigma;
            // v = (x - alpha e1) / |x - alpha e1|
            let vnorm = (2.0 * sigma * (sigma + x0_abs)).sqrt();
            for i in start..n {
                v[i] = a[(i, k)] / vnorm;
            }
            v[start] = (x0 - alpha) / vnorm;

            // p = B v on the trailing block, K = v^dagger p, w = p - K v
            for i in start..n {
                let mut acc = C64::new(0.0, 0.0);
                for j in start..n {
                    acc += a[(i, j)] * v[j];
                }
                p[i] = acc;
            }
            let kk: f64 = (start..n).map(|i| (v[i].conj() * p[i]).re).sum();
            for i in start..n {
                p[i] -= v[i] * kk;
            }
            // B <- B - 2 (v w^dagger + w v^dagger)
            for i in start..n {
                for j in start..n {
                    let delta = v[i] * p[j].conj() + p[i] * v[j].conj();
                    a[(i, j)] -= delta * 2.0;
                }
            }
            sub[k] = alpha;
            for i in start..n {
                a[(i, k)] = C64::new(0.0, 0.0);
                a[(k, i)] = C64::new(0.0, 0.0);
            }
            a[(start, k)] = alpha;
            a[(k, start)] = alpha.conj();

            if let Some(q) = q.as_mut() {
                // Q <- Q (I - 2 v v^dagger)
                for r in 0..n {
                    let mut qv = C64::new(0.0, 0.0);
                    for j in start..n {
                        qv += q[(r, j)] * v[j];
                    }
                    let qv2 = qv * 2.0;
                    for j in start..n {
                        let conj_v = v[j].conj();
                        q[(r, j)] -= qv2 * conj_v;
                    }
                }
            }
        }
        if n >= 2 {
            sub[n - 2] = a[(n - 1, n - 2)];
        }

        let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        // T = P T_r P^dagger with p_0 = 1, p_{k+1} = p_k sub_k / |sub_k|
        let mut off = Vec::with_capacity(n.saturating_sub(1));
        let mut phases = vec![C64::new(1.0, 0.0); n];
        for k in 0..n.saturating_sub(1) {
            let mag = sub[k].norm();
            off.push(mag);
            phases[k + 1] = if mag == 0.0 {
                phases[k]
            } else {
                phases[k] * (sub[k] / mag)
            };
        }
        if let Some(q) = q.as_mut() {
            for r in 0..n {
                for (c, ph) in phases.iter().enumerate() {
                    q[(r, c)] *= ph;
                }
            }
        }
        (diag, off, q)
    }
}

impl core::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl HermitianOperator for DenseMatrix {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        self.matvec(x, y);
    }
}

impl HermitianEigen {
    /// `exp(i h A) x` from the stored decomposition.
    pub fn exp_i_apply(&self, h: f64, x: &[C64], out: &mut [C64]) {
        let n = self.values.len();
        let u = &self.vectors;
        let mut coeff = vec![C64::new(0.0, 0.0); n];
        for (k, c) in coeff.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..n {
                acc += u[(i, k)].conj() * x[i];
            }
            *c = acc * C64::from_polar(1.0, h * self.values[k]);
        }
        for (i, o) in out.iter_mut().enumerate() {
            let row = &u.data[i * n..(i + 1) * n];
            *o = row.iter().zip(&coeff).map(|(a, b)| a * b).sum();
        }
    }
}
