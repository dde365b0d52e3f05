use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node `{label}` is not allowed")]
    SelfLoop { line: usize, label: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("adjacency matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("adjacency matrix is not symmetric at ({i},{j})/({j},{i})")]
    Asymmetric { i: usize, j: usize },

    #[error("adjacency matrix has nonzero diagonal entry at ({i},{i})")]
    NonzeroDiagonal { i: usize },

    #[error("cosine similarity undefined for zero-norm vector")]
    ZeroNorm,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid membership matrix: {0}")]
    InvalidMembership(String),

    #[error("Dirichlet parameter must be positive, got alpha[{index}] = {value}")]
    NonPositiveAlpha { index: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown preset `{name}` (valid presets: {valid})")]
    UnknownPreset { name: String, valid: String },

    #[error("label vectors differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
