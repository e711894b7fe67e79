//! Size guards for the exhaustive routines.
//!
//! Everything in this crate that enumerates subsets, bases, orderings or
//! matchings is meant for desk-scale inputs. Each such routine checks one of
//! the limits below and returns [`Error::Guard`](crate::Error::Guard) instead
//! of silently burning hours. The limits can be lifted at runtime via
//! [`set_override`]; the hard cap of 32 ground elements (the width of
//! [`Subset`](crate::Subset)) cannot.

use alloc::string::String;
use core::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

/// Ground-set limit for [`check_axioms`](crate::matroid::check_axioms).
pub const AXIOM_GROUND: usize = 16;
/// Ground-set limit for subset enumeration (bases, tabulation).
pub const ENUM_GROUND: usize = 16;
/// Ground-set limit for the brute-force union oracle.
pub const UNION_GROUND: usize = 12;
/// Ground-set limit for robustness search over all bases.
pub const ROBUST_GROUND: usize = 10;
/// Ground-set limit for exact robustness thresholds.
pub const TAU_GROUND: usize = 10;
/// Ground-set limit for enumerating every weight-sorted ordering.
pub const ORDERING_GROUND: usize = 8;
/// Edge-count limit for enumerating every matching of a graph.
pub const EDGE_ENUM_LIMIT: usize = 24;
/// Limit on the number of group transversals checked per witness.
pub const PRODUCT_LIMIT: u128 = 1_000_000;

static OVERRIDE: AtomicBool = AtomicBool::new(false);

/// Lifts every guard in this module for the rest of the process.
///
/// The caller takes responsibility for the running time; the 32-element
/// subset cap still applies.
pub fn set_override(on: bool) {
    OVERRIDE.store(on, Ordering::Relaxed);
}

/// Whether guards are currently lifted.
pub fn overridden() -> bool {
    OVERRIDE.load(Ordering::Relaxed)
}

pub(crate) fn check(within: bool, describe: impl FnOnce() -> String) -> Result<()> {
    if within || overridden() {
        Ok(())
    } else {
        Err(Error::Guard(describe()))
    }
}
