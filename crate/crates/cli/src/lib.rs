//! Batch driver around [`trobust_core`]: instance files, seeded generation,
//! per-instance check runs, and CSV/JSON/DOT emission.
//!
//! Everything here is deterministic for a fixed seed and flag set; reports
//! iterate in instance order and carry no timestamps or machine state.

use std::fmt;
use std::path::PathBuf;

pub mod checks;
pub mod generate;
pub mod instance;
pub mod render;
pub mod report;

/// Driver-level failure: bad input or I/O trouble, mapped to exit code 2.
/// Check outcomes are data ([`checks::ResultRecord`]), not errors.
#[derive(Debug)]
pub enum Error {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Core(trobust_core::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "{msg}"),
            Error::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<trobust_core::Error> for Error {
    fn from(e: trobust_core::Error) -> Self {
        Error::Core(e)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
