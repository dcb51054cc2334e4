use thiserror::Error;

/// Errors produced by word parsing, analysis and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("symbol pairing violated: {0}")]
    SymbolPairing(String),

    #[error("word is not a valid Wicks form: {0}")]
    InvalidWord(String),

    #[error("word is not maximal (length {len}, genus {genus})")]
    NotMaximal { len: usize, genus: usize },

    #[error("genus must be at least {min}, got {got}")]
    GenusTooSmall { min: usize, got: usize },

    #[error("edge {0} does not occur in the word")]
    EdgeNotFound(String),

    #[error("no vertex with index {0}")]
    VertexNotFound(usize),

    #[error("vertex {0} is not negative")]
    VertexNotNegative(usize),

    #[error("shift {shift} is not an automorphism of the word")]
    NotAnAutomorphism { shift: usize },

    #[error("automorphism order {order} not supported here (expected one of {expected})")]
    UnsupportedOrder { order: usize, expected: &'static str },

    #[error("quotient by order 3 requires no fixed negative vertices, found t = {t}")]
    FixedNegativeVertices { t: usize },

    #[error("capacity exceeded: genus {requested} beyond supported bound {bound} for {what}")]
    Capacity {
        requested: usize,
        bound: usize,
        what: &'static str,
    },

    #[error("census input mixes genera ({0} and {1})")]
    MixedGenus(usize, usize),

    #[error("expected an integer, got {0} (formula implementation bug)")]
    Integrality(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
