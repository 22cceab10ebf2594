use thiserror::Error;

/// Errors raised anywhere in the workbench.
///
/// `Clone` so that a failed table construction can be cached and handed to
/// every caller waiting on the same window.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid c-sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("window width {width} exceeds the configured bound {bound}")]
    WindowTooWide { width: u64, bound: u64 },
    #[error("presentation would need about {estimate} commutator tuples (bound {bound})")]
    RelatorExplosion { estimate: u128, bound: u128 },
    #[error("coset enumeration exceeded {limit} live cosets")]
    CapacityExceeded { limit: usize },
    #[error("letter references generator {gen} but the table has {count} generators")]
    InvalidLetter { gen: usize, count: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("integer overflow in t-exponent or generator index")]
    Overflow,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed data: {0}")]
    Format(String),
}

impl Error {
    /// True for the errors that signal "raise the cap or shrink the problem".
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::CapacityExceeded { .. }
                | Error::WindowTooWide { .. }
                | Error::RelatorExplosion { .. }
                | Error::Budget(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
