use thiserror::Error;

/// Errors raised while reading a graph from text or JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {detail}")]
    Header { line: usize, detail: String },
    #[error("line {line}: malformed edge: {detail}")]
    Edge { line: usize, detail: String },
    #[error("line {line}: vertex index {index} out of range (n = {n})")]
    OutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: expected {expected} edges, found {found}")]
    EdgeCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line 1: invalid JSON: {0}")]
    Json(String),
}

/// Reasons an input is outside the scope of the tester. These are
/// precondition failures, not negative verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("vertex degree exceeds four")]
    DegreeExceeded,
    #[error("not biconnected")]
    NotBiconnected,
    #[error("not series-parallel")]
    NotSeriesParallel,
    #[error("not independent-parallel")]
    NotIndependentParallel,
}

impl Rejection {
    /// Short machine-parsable reason string.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::DegreeExceeded => "degree exceeded",
            Rejection::NotBiconnected => "not biconnected",
            Rejection::NotSeriesParallel => "not series-parallel",
            Rejection::NotIndependentParallel => "not independent-parallel",
        }
    }
}

/// Failures of the SPQ*-tree construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is a simple cycle")]
    SimpleCycle,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("graph is not series-parallel")]
    NotSeriesParallel,
}

/// Raised by the witness pipeline when the algebra promised a
/// realization that cannot be built. Unreachable for correct inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal infeasibility: {0}")]
pub struct InternalInfeasible(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {edges} edges, above the oracle cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("instance is not connected")]
    Disconnected,
}

/// Anything that can go wrong when drawing a graph end to end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawError {
    #[error(transparent)]
    Rejected(#[from] Rejection),
    #[error("graph is not rectilinear planar")]
    NotRectilinear,
    #[error(transparent)]
    Internal(#[from] InternalInfeasible),
}
