//! Small linear-algebra kernels: complex vector helpers, a symmetric
//! tridiagonal QL eigensolver, a dense Hermitian eigensolver, Lanczos for the
//! lowest eigenvalues and a Krylov propagator for `exp(i h A) v`.

pub mod dense;
pub mod krylov;
pub mod lanczos;
pub mod tridiag;

use crate::C64;

/// A Hermitian linear map on `C^dim`.
pub trait HermitianOperator {
    fn dim(&self) -> usize;
    /// Writes `A x` into `y`.
    fn apply(&self, x: &[C64], y: &mut [C64]);
}

/// A real symmetric linear map on `R^dim`.
pub trait SymmetricOperator {
    fn dim(&self) -> usize;
    /// Writes `A x` into `y`.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// `<x, y>` with the first argument conjugated.
pub fn cdot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn cnorm(x: &[C64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}
