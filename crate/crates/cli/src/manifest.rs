//! Run manifest written next to every set of outputs.

use serde::Serialize;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Versions, seeds, the full configuration and the files produced. Holds no
/// timestamps or host details, so equal configurations give equal bytes.
#[derive(Debug, Serialize)]
pub struct Manifest<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub subcommand: &'static str,
    pub seeds: Seeds,
    pub config: &'a C,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Seeds {
    /// Seed of a single generated graph.
    pub graph: Option<u64>,
    /// Master seed of an ensemble.
    pub master: Option<u64>,
    /// How member seeds follow from the master seed.
    pub member_rule: Option<&'static str>,
}

impl<'a, C: Serialize> Manifest<'a, C> {
    pub fn new(subcommand: &'static str, seeds: Seeds, config: &'a C, outputs: Vec<String>) -> Self {
        Self {
            tool: "adiamis",
            version: env!("CARGO_PKG_VERSION"),
            core_version: adiamis_core::VERSION,
            subcommand,
            seeds,
            config,
            outputs,
        }
    }
}
