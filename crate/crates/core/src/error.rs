use thiserror::Error;

/// Errors produced by the library.
///
/// The three variants are kept apart because callers (the CLI in particular)
/// map each to a distinct exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A brute-force oracle was asked to work beyond its configured size.
    #[error("capacity exceeded: {what} = {value} is above the cap of {cap}")]
    Capacity {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    /// No r in [1, a-1] satisfies the conditions of the max-r characterization.
    #[error(
        "hypothesis fails for a = {a}: no r in [1, a-1] with iota(r) = 4, iota(a+r) >= 3, iota(2a+r) >= 2"
    )]
    HypothesisFailure { a: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
