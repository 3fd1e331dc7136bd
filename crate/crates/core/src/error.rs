use thiserror::Error;

/// Errors raised by the simulator core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("requested {requested} edges but only {available} vertex pairs exist")]
    TooManyEdges { requested: usize, available: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) listed twice")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("spider graph needs at least one leg and at most 31")]
    SpiderLegs(usize),
    #[error("independent-set basis exceeds the cap of {cap} states ({found} found before stopping)")]
    BasisCap { cap: usize, found: usize },
    #[error("dimension {dimension} exceeds the limit {limit} for {what}")]
    DimensionLimit {
        what: &'static str,
        dimension: usize,
        limit: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("norm drift {drift:e} exceeds tolerance {tolerance:e} (time step too coarse)")]
    NormDrift { drift: f64, tolerance: f64 },
    #[error("Krylov exponential did not converge within {0} vectors")]
    KrylovNotConverged(usize),
    #[error("eigensolver did not converge: {0}")]
    EigenNotConverged(&'static str),
    #[error("log-gap fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("gap {0} is not positive; cannot take its logarithm")]
    NonPositiveGap(f64),
}
