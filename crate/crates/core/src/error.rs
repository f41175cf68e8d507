use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by model construction, estimation and testing.
///
/// Node ids in error payloads are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("degree {degree} of node {node} exceeds n - 1 = {max}")]
    DegreeOutOfRange {
        node: usize,
        degree: u32,
        max: usize,
    },
    #[error("degree sum {sum} is odd")]
    OddDegreeSum { sum: u64 },
    #[error("parameter {index} is not finite")]
    NonFinite { index: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("node {node} has boundary degree {degree}; the MLE lies at infinity")]
    DegreeBoundary { node: usize, degree: u32 },
    #[error(
        "degree sum {sum} is on the boundary 0 or n(n-1); the restricted MLE lies at infinity"
    )]
    DegreeSumBoundary { sum: u64 },
    #[error("fixed-point iteration did not converge after {iterations} iterations (max residual {max_residual:e}{})", if *.diverged { ", parameters diverged" } else { "" })]
    NonConvergence {
        iterations: usize,
        max_residual: f64,
        diverged: bool,
    },
    #[error("invalid fit configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("pair test needs two distinct nodes, got {0} twice")]
    SameNode(usize),
    #[error("fit did not converge")]
    Unconverged,
    #[error("significance level {0} outside (0, 1)")]
    InvalidLevel(f64),
    #[error("weights must be nonnegative and sum to 1 (sum {sum})")]
    InvalidWeights { sum: f64 },
    #[error("no p-values to combine")]
    EmptyInput,
    #[error("argument outside the domain of {0}")]
    Domain(&'static str),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGraph => "EmptyGraph",
            Error::SelfLoop { .. } => "SelfLoop",
            Error::NodeOutOfRange { .. } => "NodeOutOfRange",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::OddDegreeSum { .. } => "OddDegreeSum",
            Error::NonFinite { .. } => "NonFinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegreeBoundary { .. } | Error::DegreeSumBoundary { .. } => "DegreeBoundary",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::SameNode(_) => "SameNode",
            Error::Unconverged => "Unconverged",
            Error::InvalidLevel(_) => "InvalidLevel",
            Error::InvalidWeights { .. } => "InvalidWeights",
            Error::EmptyInput => "EmptyInput",
            Error::Domain(_) => "Domain",
        }
    }
}
