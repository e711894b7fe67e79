use alloc::string::String;
use core::fmt;

/// Errors reported by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: out-of-range indices, duplicate edges, sets that are
    /// not bases, orderings that are not weight-sorted, and so on.
    Invalid(String),
    /// No matching covers the requested left vertices.
    Infeasible,
    /// A size guard for exhaustive routines was exceeded.
    /// See [`crate::guard`] for the limits and the override switch.
    Guard(String),
    /// An internal consistency assertion failed. Every one of these replays a
    /// proven statement, so seeing this error means a bug, not a bad input.
    Lemma(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::Infeasible => write!(f, "no matching covers the requested set"),
            Error::Guard(msg) => write!(f, "size guard exceeded: {msg}"),
            Error::Lemma(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
