use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid label {label} at ({row}, {col}): alphabet has {alphabet} letters")]
    InvalidLabel {
        row: usize,
        col: usize,
        label: usize,
        alphabet: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph must be e-free")]
    NotEFree,

    #[error("invalid contraction sequence at step {step}: {reason}")]
    InvalidSequence { step: usize, reason: String },

    #[error("graph with {vertices} vertices exceeds the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("profile table of {base}^{exponent} entries is too large")]
    TableTooLarge { base: usize, exponent: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("weight domain mismatch: {premorphism} expects {expected}, got {found}")]
    WeightDomainMismatch {
        premorphism: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("pre-morphism {premorphism} is not {flag}; the instance-parameterized solver requires it")]
    Capability {
        premorphism: &'static str,
        flag: &'static str,
    },

    #[error("function out of range: {0}")]
    FunctionOutOfRange(String),

    #[error("enumeration of {requested} maps exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u128 },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("{format} line {line}: {message}")]
    Parse {
        format: &'static str,
        line: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(format: &'static str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            format,
            line,
            message: message.into(),
        }
    }

    /// Capability errors are reported with a distinct exit code by the CLI.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
