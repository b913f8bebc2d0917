use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("size mismatch: expected {expected} darts, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("map is not bipartite: {0}")]
    NotBipartite(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("pipeline integrity error: {0}")]
    Integrity(String),
    #[error("edge ({0}, {1}) does not separate two faces")]
    NotSeparating(usize, usize),
    #[error("structural anomaly in the dual: {0}")]
    DualAnomaly(String),
    #[error("edge set is disconnected; components (by edge index): {0:?}")]
    Disconnected(Vec<Vec<usize>>),
    #[error("unknown class: {0}")]
    UnknownClass(String),
    #[error("letter {label} occurs {count} times in the word of {at}; only double forks are supported")]
    UnsupportedFork {
        at: String,
        label: String,
        count: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
