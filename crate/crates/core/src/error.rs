use thiserror::Error;

/// Errors produced by the bergelab library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index} has {found} vertices, expected {expected}")]
    EdgeWrongSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {second} duplicates edge {first}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("trace never reaches minimum degree {k}")]
    Unreachable { k: usize },
    #[error("operation requires k = {expected}, sample has k = {found}")]
    WrongK { expected: usize, found: usize },
    #[error("operation requires {requirement}, got r = {found}")]
    WrongR {
        requirement: &'static str,
        found: usize,
    },
    #[error("Hamiltonicity queries need n >= 3, got n = {0}")]
    TooFewVertices(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("exact check infeasible: {0}")]
    Infeasible(String),
    #[error("property P7 requested without a sparsified sub-hypergraph")]
    MissingGamma0,
    #[error("invalid experiment config: {0}")]
    ConfigInvalid(String),
    #[error("malformed fixture: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
