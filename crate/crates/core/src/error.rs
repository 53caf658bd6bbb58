use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index}: expected {expected} distinct vertices, found {found}")]
    EdgeSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {index}: vertex {vertex} out of range 1..={n}")]
    VertexRange {
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {index} duplicates an earlier edge")]
    DuplicateEdge { index: usize },
    #[error("invalid vertex {vertex} (vertex count {n})")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("hypergraph is disconnected; {0} requires a connected input")]
    Disconnected(&'static str),
    #[error("hypergraph is trivial (single vertex); {0} requires a nontrivial input")]
    TrivialHypergraph(&'static str),
    #[error("uniformity mismatch: {left} vs {right}")]
    UniformityMismatch { left: usize, right: usize },
    #[error("{context}: expected length {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "Macaulay basis too large: |S| = C({top}, {bottom}) = {size} exceeds the cap {cap}; \
         raise the cap to force the computation"
    )]
    SizeGuard {
        top: usize,
        bottom: usize,
        size: u128,
        cap: usize,
    },
    #[error("enumeration space {states} exceeds the cap {cap}")]
    EnumerationGuard { states: u128, cap: u64 },
    #[error("exact division left a nonzero remainder (degree {remainder_degree})")]
    NonzeroRemainder { remainder_degree: usize },
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivision,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("diagonal scaling has a zero entry at position {index}")]
    ZeroDiagonal { index: usize },
    #[error("tensor is not nonnegative (entry at {0:?})")]
    NegativeEntry(Vec<usize>),
    #[error("tensor is not weakly irreducible")]
    NotWeaklyIrreducible,
    #[error("power iteration did not converge within {max_iter} iterations (spread {spread:e})")]
    NonConvergence { max_iter: usize, spread: f64 },
    #[error("row sum {sum} of slice {index} deviates from 1 by more than {tol:e}")]
    RowSumDeviation { index: usize, sum: f64, tol: f64 },
    #[error("internal consistency check failed: {0}")]
    ConsistencyCheck(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
