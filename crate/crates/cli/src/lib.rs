//! File formats, seeded parallel ensembles, self-checks and the command-line
//! driver around [`adiamis_core`].
//!
//! Outputs:
//!
//! | file | columns / fields |
//! |------|------------------|
//! | graph text | `n m` header, then `u v` per edge |
//! | `basis.csv` | `index,mask_hex,size` |
//! | `trajectory.csv` | `theta,index,prob` (probabilities `>= 1e-9`) |
//! | `gap.csv` | `theta,lambda0,lambda1,gap` |
//! | gap `summary.json` | `n, dimension, min_gap, theta_at_min` |
//! | `runs.csv` / `run.csv` | `n,m,generator,seed,alpha,mean_size,ratio,mis_probability,runtime_ms` |
//! | ensemble `summary.json` | config echo, `r_bar`, `r_variance`, `r_std_error`, `skip_count` |
//! | `manifest.json` | versions, seeds, full config, output list |

pub mod cli;
pub mod config;
pub mod ensemble;
pub mod graph_io;
pub mod manifest;
pub mod records;
pub mod source;
pub mod svg;
pub mod validate;

mod error;

pub use error::CliError;
