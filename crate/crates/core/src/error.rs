use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or configuration.
    Validation,
    /// A mathematical invariant failed to hold on a constructed object.
    Invariant,
    /// An enumeration or search exceeded its configured budget.
    Resource,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` appears more than once")]
    DuplicateVariable(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("event {var}={symbol} has zero probability")]
    ZeroProbability { var: String, symbol: usize },

    #[error("symbol {symbol} is outside an alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("enumeration needs {needed} states, limit is {limit}")]
    LimitExceeded { needed: u128, limit: u128 },

    #[error("ordering search needs {needed} evaluations, budget is {budget}; fall back to the canonical ordering")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("undecodable transcript: {0}")]
    Undecodable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Invariant(_) => ErrorKind::Invariant,
            Error::LimitExceeded { .. } | Error::BudgetExceeded { .. } => ErrorKind::Resource,
            _ => ErrorKind::Validation,
        }
    }
}
