use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input. `offset` is a byte offset into the record.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An argument outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// A configured resource cap was hit.
    #[error("{what} exceeds the cap of {cap}")]
    Resource { what: String, cap: u64 },

    /// The caller broke a precondition of the operation.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Internal data turned out inconsistent (corrupted rotation data and the like).
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }

    /// Whether the error is a cap breach rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
