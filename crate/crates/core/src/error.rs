use thiserror::Error;

/// Why a line of a network file was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed arc line: {0}")]
    MalformedArc(String),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(String),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("node index {index} out of range 1..={n}")]
    NodeOutOfRange { index: usize, n: usize },
    #[error("expected {expected} arcs, found {found}")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error("{field}={value} unsupported; relabel nodes so that the source is 1 and the sink is n")]
    TerminalNotCanonical { field: &'static str, value: usize },
}

/// A rejected network file, with the 1-based line number it was detected on.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("state vector has {found} coordinates, network has {expected} arcs")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{what}: {value} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("deadline exceeded")]
    Timeout,
}

pub type Result<T> = std::result::Result<T, Error>;
