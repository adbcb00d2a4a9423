use thiserror::Error;

/// Crate-wide error type. Everything that can go wrong in the library funnels
/// through here so callers only deal with one enum.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // ---- edge-list parsing ----
    #[error("bad header: expected `n m` on the first line, got {0:?}")]
    BadHeader(String),
    #[error("bad edge on line {line}: {text:?}")]
    BadEdgeLine { line: usize, text: String },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(usize, usize),

    // ---- graph operations ----
    #[error("contraction set is empty")]
    EmptySet,
    #[error("contraction set does not induce a connected subgraph")]
    DisconnectedContractionSet,
    #[error("splice endpoints have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("splice pairing is not a bijection between the two neighbourhoods")]
    InvalidPairing,
    #[error("edge ({0}, {1}) not present in the graph")]
    EdgeNotPresent(usize, usize),
    #[error("graph too small: {0}")]
    TooSmall(&'static str),

    // ---- matchings / circuits ----
    #[error("enumeration cap exceeded: {0}")]
    EnumerationCapExceeded(&'static str),
    #[error("edge set is not a minimal cut")]
    NotACut,
    #[error("circuit has odd length, so clockwise parity is undefined")]
    OddCircuit,
    #[error("expected an odd circuit")]
    NotOddCircuit,
    #[error("edge set is not a 1-factor of the graph")]
    NotAFactor,
    #[error("graph has no 1-factor")]
    NoFactor,
    #[error("graph is not 1-extendible")]
    NotOneExtendible,

    // ---- decompositions ----
    #[error("graph has an odd number of vertices")]
    OddOrder,
    #[error("graph is bicritical, so it has no barrier with two or more vertices")]
    IsBicritical,

    // ---- witnesses ----
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("reduced trace has even length; the supplied pair cannot be valid")]
    EvenReducedTrace,

    // ---- oracles ----
    #[error("instance too large for brute force: {0}")]
    TooLarge(&'static str),

    /// An internal invariant failed. These indicate a bug (or an input that
    /// silently violated a precondition) rather than a normal error path.
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for returning `Error::Internal` with a formatted message.
#[macro_export]
macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}
