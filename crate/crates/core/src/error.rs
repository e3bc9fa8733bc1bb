use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex index is not below the vertex count.
    VertexOutOfRange { vertex: usize, n: usize },
    /// An edge does not have exactly `expected` distinct vertices.
    EdgeSize {
        edge: usize,
        expected: usize,
        found: usize,
    },
    /// The same vertex set appears twice in the edge list.
    DuplicateEdge { edge: usize },
    /// Uniformity outside what the operation accepts.
    Uniformity {
        found: usize,
        expected: &'static str,
    },
    /// An operation needs a coloured vertex.
    Uncoloured { vertex: usize },
    /// A colouring is sized for a different hypergraph.
    ColouringSize { expected: usize, found: usize },
    /// `naive_lll_linear` was given a hypergraph with two edges sharing two vertices.
    NotLinear,
    /// Resampling ran out of budget.
    BudgetExhausted { resamples: u64 },
    /// The exact oracle refuses instances above its size guard.
    SizeGuard { n: usize, limit: usize },
    /// A parameter violates its precondition.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            Error::EdgeSize {
                edge,
                expected,
                found,
            } => write!(
                f,
                "edge {edge} has {found} distinct vertices, expected {expected}"
            ),
            Error::DuplicateEdge { edge } => write!(f, "edge {edge} duplicates an earlier edge"),
            Error::Uniformity { found, expected } => {
                write!(f, "uniformity {found} not supported (expected {expected})")
            }
            Error::Uncoloured { vertex } => write!(f, "vertex {vertex} is uncoloured"),
            Error::ColouringSize { expected, found } => write!(
                f,
                "colouring covers {found} vertices but the hypergraph has {expected}"
            ),
            Error::NotLinear => f.write_str("hypergraph is not linear"),
            Error::BudgetExhausted { resamples } => {
                write!(f, "resampling budget exhausted after {resamples} resamples")
            }
            Error::SizeGuard { n, limit } => {
                write!(f, "instance has {n} vertices, oracle limit is {limit}")
            }
            Error::InvalidParameter(msg) => f.write_str(msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
