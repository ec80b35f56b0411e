use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("instance exceeds brute-force limits: {0}")]
    TooLarge(String),
    #[error("profile has no votes")]
    EmptyProfile,
    #[error("insufficient sample: no item was sampled")]
    InsufficientSample,
    #[error("degenerate instance: {0}")]
    Degenerate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `candidates: a,b,...` header")]
    MissingHeader,
    #[error("malformed line `{0}`")]
    Malformed(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("duplicate candidate `{0}`")]
    DuplicateCandidate(String),
    #[error("ranking does not list every candidate")]
    IncompleteRanking,
    #[error("weight must be a positive integer, got `{0}`")]
    NonpositiveWeight(String),
}

impl Error {
    /// Short stable tag used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::UnknownRule(_) => "unknown_rule",
            Error::Unsupported(_) => "unsupported",
            Error::TooLarge(_) => "too_large",
            Error::EmptyProfile => "empty_profile",
            Error::InsufficientSample => "insufficient_sample",
            Error::Degenerate(_) => "degenerate",
        }
    }
}
