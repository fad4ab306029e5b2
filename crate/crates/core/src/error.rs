use thiserror::Error;

/// Failures reported by the algebra, the solvers and the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("structurally singular: the permanent of the modulus matrix is -inf")]
    StructurallySingular,
    #[error("divergent star: a circuit through node {0} has positive weight")]
    DivergentStar(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("permutation expansion refused for n = {n} (bound {bound})")]
    BruteForceBound { n: usize, bound: usize },
    #[error("cycle enumeration refused: component of {nodes} nodes exceeds cap {cap}")]
    CycleCap { nodes: usize, cap: usize },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("cross-check failed: {0}")]
    Disagreement(String),
    #[error("not in general position: degenerate maximal minors {0:?}")]
    NotGeneralPosition(Vec<usize>),
    #[error("iteration not stationary after {0} sweeps")]
    NotStationary(usize),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
