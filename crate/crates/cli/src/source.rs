//! Where a run's graph comes from.

use std::path::PathBuf;

use adiamis_core::graph::{edgeless, gen_gnm, gen_gnp, spider, Graph};
use serde::Serialize;

use crate::graph_io::read_graph;
use crate::CliError;

/// A graph family, optionally seeded, or a file.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphSource {
    Gnp { n: usize, p: f64 },
    Gnm { n: usize, m: usize },
    /// `G(n, m)` with `m = n`.
    GnmEqualN { n: usize },
    Spider { legs: usize },
    Edgeless { n: usize },
    File { path: PathBuf },
}

impl GraphSource {
    /// Whether the graph depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(self, Self::Gnp { .. } | Self::Gnm { .. } | Self::GnmEqualN { .. })
    }

    pub fn build(&self, seed: u64) -> Result<Graph, CliError> {
        let g = match *self {
            Self::Gnp { n, p } => gen_gnp(n, p, seed)?,
            Self::Gnm { n, m } => gen_gnm(n, m, seed)?,
            Self::GnmEqualN { n } => gen_gnm(n, n, seed)?,
            Self::Spider { legs } => spider(legs)?,
            Self::Edgeless { n } => edgeless(n)?,
            Self::File { ref path } => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                read_graph(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
            }
        };
        Ok(g)
    }

    /// Value of the `generator` column in per-run records.
    pub fn label(&self) -> String {
        match self {
            Self::Gnp { p, .. } => format!("gnp:{p}"),
            Self::Gnm { m, .. } => format!("gnm:{m}"),
            Self::GnmEqualN { .. } => "gnm-equal-n".into(),
            Self::Spider { .. } => "spider".into(),
            Self::Edgeless { .. } => "edgeless".into(),
            Self::File { .. } => "file".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_sizes() {
        let g = GraphSource::GnmEqualN { n: 9 }.build(4).unwrap();
        assert_eq!((g.n(), g.m()), (9, 9));
        assert_eq!(GraphSource::Gnp { n: 5, p: 0.5 }.label(), "gnp:0.5");
        assert_eq!(GraphSource::Spider { legs: 3 }.build(0).unwrap().n(), 7);
        assert!(!GraphSource::Edgeless { n: 3 }.is_random());
    }
}
