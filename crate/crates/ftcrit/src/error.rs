use crate::parser::ParseError;

/// Unified error type for model construction and every analysis operation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate event id `{0}`")]
    DuplicateEventId(String),
    #[error("gate references undeclared event `{0}`")]
    DanglingReference(String),
    #[error("declared event `{0}` is never referenced by the top gate")]
    UnusedEvent(String),
    #[error("top gate references no events although events are declared")]
    EmptyTree,
    #[error("event id must be non-empty")]
    EmptyEventId,
    #[error("failure rate must be a finite nonnegative number, got {0}")]
    NegativeRate(f64),
    #[error("time must be a finite nonnegative number, got {0}")]
    NegativeTime(f64),
    #[error("{n} events exceed the enumeration cap of {cap}")]
    TooManyEvents { n: usize, cap: usize },
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("state vector does not cover event `{0}`")]
    MissingState(String),
    #[error("unknown event id `{0}`")]
    UnknownEvent(String),
    #[error("component indices must differ, got `{0}` twice")]
    SameIndex(String),
    #[error("tree contains a NOT gate; this analysis requires a NOT-free tree")]
    NotFreeViolation,
    #[error("cut-set expansion exceeded {cap} intermediate cuts")]
    ExpansionTooLarge { cap: usize },
    #[error("{m} cuts exceed the inclusion-exclusion cap of {cap}")]
    TooManyCuts { m: usize, cap: usize },
    #[error("inclusion-exclusion total {0} lies outside [0, 1] beyond tolerance")]
    NumericalInstability(f64),
    #[error("system unreliability is 0; ratio measure undefined")]
    SystemNeverFails,
    #[error("no sample produced a system failure")]
    NoFailureSamples,
    #[error("{0}")]
    Parse(#[from] ParseError),
}

impl Error {
    /// Stable machine-readable kind name, used by the CLI's
    /// `error: KIND: detail` output format.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateEventId(_) => "DuplicateEventId",
            Error::DanglingReference(_) => "DanglingReference",
            Error::UnusedEvent(_) => "UnusedEvent",
            Error::EmptyTree => "EmptyTree",
            Error::EmptyEventId => "EmptyEventId",
            Error::NegativeRate(_) => "NegativeRate",
            Error::NegativeTime(_) => "NegativeTime",
            Error::TooManyEvents { .. } => "TooManyEvents",
            Error::ProbabilityOutOfRange(_) => "ProbabilityOutOfRange",
            Error::MissingState(_) => "MissingState",
            Error::UnknownEvent(_) => "UnknownEvent",
            Error::SameIndex(_) => "SameIndex",
            Error::NotFreeViolation => "NotFreeViolation",
            Error::ExpansionTooLarge { .. } => "ExpansionTooLarge",
            Error::TooManyCuts { .. } => "TooManyCuts",
            Error::NumericalInstability(_) => "NumericalInstability",
            Error::SystemNeverFails => "SystemNeverFails",
            Error::NoFailureSamples => "NoFailureSamples",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
