use std::fmt;

use thiserror::Error;

/// Two ordered vertex pairs at the same distance whose neighbour counts differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityWitness {
    pub distance: usize,
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// `(c, a, b)` counts for `first` and `second`.
    pub counts: [(usize, usize, usize); 2],
}

impl fmt::Display for RegularityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs {:?} and {:?} at distance {} have (c, a, b) = {:?} vs {:?}",
            self.first, self.second, self.distance, self.counts[0], self.counts[1]
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("InvalidEdge: ({0}, {1}) for a graph on {2} vertices")]
    InvalidEdge(usize, usize, usize),
    #[error("DisconnectedGraph: vertex {unreached} is unreachable from vertex 0")]
    DisconnectedGraph { unreached: usize },
    #[error("InvalidGraph: {0}")]
    InvalidGraph(String),
    #[error("InvalidEdgeList: {0}")]
    InvalidEdgeList(String),
    #[error("InvalidOrigin: vertex {origin} out of range for {n} vertices")]
    InvalidOrigin { origin: usize, n: usize },
    #[error("NotDistanceRegular: {0}")]
    NotDistanceRegular(RegularityWitness),
    #[error("InvalidIntersectionArray: {0}")]
    InvalidIntersectionArray(String),
    #[error("NotQDType: shell {shell} has vertices with differing neighbour counts")]
    NotQdType { shell: usize },
    #[error("InvalidJacobi: {0}")]
    InvalidJacobi(String),
    #[error("ZeroReference: Lanczos reference vector has zero or non-finite norm")]
    ZeroReference,
    #[error("IndexOutOfRange: index {index} exceeds maximum {max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("PoleProximity: z = {re}{im:+}i lies within {distance:e} of pole {pole}")]
    PoleProximity {
        re: f64,
        im: f64,
        pole: f64,
        distance: f64,
    },
    #[error("EigensolverFailure: no convergence for eigenvalue {index} after {iterations} iterations")]
    EigensolverFailure { index: usize, iterations: usize },
    #[error("NotSymmetric: entry ({0}, {1}) differs from its transpose")]
    NotSymmetric(usize, usize),
    #[error("ConvergenceFailure: off-diagonal norm {0:e} after maximum sweeps")]
    ConvergenceFailure(f64),
    #[error("OutOfSupportedRange: J_{order}({x}) outside order <= 50, |x| <= 1000")]
    OutOfSupportedRange { order: u32, x: f64 },
    #[error("NoClosedForm: catalog entry {0} has no tabulated amplitude")]
    NoClosedForm(String),
    #[error("UnknownFamily: {0}")]
    UnknownFamily(String),
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
