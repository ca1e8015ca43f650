use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex index {index} out of range for {size} vertices")]
    VertexOutOfRange { index: usize, size: usize },

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("edges and members must be nonempty")]
    EmptyEdge,

    #[error("not a permutation: {0}")]
    NotBijection(String),

    #[error(
        "permutation acts on {permutation} elements but the hypergraph has {vertices} vertices"
    )]
    DomainMismatch { permutation: usize, vertices: usize },

    #[error("invalid host graph: {0}")]
    InvalidHost(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Contract(String),

    /// The proof replay found a broken invariant. Since the counting argument
    /// guarantees every checked inequality, this always indicates a bug.
    #[error("audit failure at level {level}: {invariant}: {detail}")]
    Audit {
        level: usize,
        invariant: String,
        detail: String,
    },

    #[error("invalid search configuration: {0}")]
    Config(String),

    #[error("time budget exhausted")]
    BudgetExhausted,

    #[error("{0}")]
    Domain(String),

    /// Malformed or schema-violating JSON; `offset` is a byte offset into the input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}
