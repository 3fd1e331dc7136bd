//! Simulator core for the non-Abelian adiabatic algorithm that approximates
//! maximum independent sets.
//!
//! A graph's independent sets span the degenerate ground space of the spin
//! Hamiltonian `H0`. Rotating every spin slowly along `r(theta, phi)` drives
//! the amplitudes inside that space with the gauge (Berry) matrix `A(theta)`,
//! and sweeping `theta` from `0` to `pi` anneals from the empty set towards
//! the maximum independent set.
//!
//! The crate is `no_std` (it needs `alloc`) and holds only pure computation:
//!
//! - [`graph`]: graphs, seeded generators, special families.
//! - [`mis`]: exact maximum independent set oracle.
//! - [`basis`]: independent-set basis and one-vertex hop links.
//! - [`gauge`]: `H0` energies, the gauge matrix, and a finite-difference
//!   Berry connection built from explicit spin rotations.
//! - [`dynamics`]: the time-ordered sub-space evolution.
//! - [`spectra`]: instantaneous gaps of `A(theta)` and log-gap fits.
//! - [`analysis`]: mean independent-set size, ratio and ensemble statistics.
//!
//! IO, file formats, parallel ensembles and the CLI live in the `adiamis`
//! crate.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod basis;
pub mod dynamics;
pub mod gauge;
pub mod graph;
pub mod linalg;
pub mod mis;
pub mod rng;
pub mod spectra;

mod error;

pub use error::Error;

/// Version of this crate, echoed in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;

pub use analysis::{mean_size, mis_probability, ratio};
pub use basis::IsBasis;
pub use dynamics::{Schedule, StateVector};
pub use gauge::{GaugeParams, SparseHermitian};
pub use graph::Graph;
pub use mis::{exact_mis, MisResult};
pub use spectra::GapCurve;
