use thiserror::Error;

use crate::constructors::{OddCycleConditionReport, PerfectnessReport};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("points have inconsistent lengths: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rank undefined for points")]
    RankUndefinedForPoint,

    #[error("bases must be nonempty")]
    NoBases,

    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    GroundSetTooLarge(usize),

    #[error("element {element} is outside the ground set of size {ground_size}")]
    ElementOutOfRange { element: usize, ground_size: usize },

    #[error("bases have unequal sizes ({first} and {other})")]
    UnequalBasisSizes { first: usize, other: usize },

    #[error("basis exchange fails for {first:?} and {second:?} at element {element}")]
    ExchangeViolation {
        first: Vec<usize>,
        second: Vec<usize>,
        element: usize,
    },

    #[error("parallel classes require loopless matroid")]
    LoopsPresent,

    #[error("subset too large for exact decomposition test ({size} > {limit})")]
    SubsetTooLarge { size: usize, limit: usize },

    #[error("matroid is not connected")]
    Disconnected,

    #[error("graph is not 2-connected")]
    NotTwoConnected,

    #[error("graph has loops")]
    GraphHasLoops,

    #[error("edge {edge} is outside the edge list of length {len}")]
    EdgeOutOfRange { edge: usize, len: usize },

    #[error("vertex {vertex} is outside the vertex range 0..{count}")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("graph must be simple: {0}")]
    NotSimple(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("poset relation is cyclic")]
    CyclicOrder,

    #[error("input of size {size} exceeds the enumeration gate of {limit}")]
    GateExceeded { size: usize, limit: usize },

    #[error("graph is not perfect (witness {:?})", .0.witness)]
    NotPerfect(PerfectnessReport),

    #[error("odd cycle condition fails (witness {:?})", .0.witness)]
    OddCycleConditionFails(OddCycleConditionReport),

    #[error("{element} is not in the chosen coordinate set")]
    PivotNotInSet { element: usize },

    #[error("coordinate {0} is out of range")]
    CoordinateOutOfRange(usize),

    #[error("projection not injective on P")]
    ProjectionNotInjective,

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("malformed file: {0}")]
    Format(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}
