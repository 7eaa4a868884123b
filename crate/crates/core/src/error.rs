use thiserror::Error;

/// Errors raised by the algebra engine. Every variant is an input error: the
/// computations themselves are total once their preconditions hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("too many variables: {0} (at most {max} supported)", max = crate::sets::MAX_VARS)]
    TooManyVariables(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidCharacteristic(u64),

    #[error("unknown field {0:?} (expected q, f2, f3 or fp:<p>)")]
    UnknownField(String),

    #[error("matrix entry has a denominator divisible by {0}")]
    NonInvertibleEntry(u32),

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("the unit ideal is not supported here")]
    UnitIdeal,

    #[error("the zero ideal is not supported here")]
    ZeroIdeal,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("the void complex is not supported here")]
    VoidComplex,

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("complex is not a cone over vertex {0}")]
    NotACone(usize),

    #[error("{0} is not an independent set")]
    NotIndependent(String),

    #[error("graph has no edges")]
    NoEdges,

    #[error("regularity list too short: need {needed}, got {found}")]
    ListTooShort { needed: usize, found: usize },

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
