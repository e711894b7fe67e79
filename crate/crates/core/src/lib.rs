//! Transversal matroids, k-fold matroid union, and k-robust subsets.
//!
//! A transversal matroid lives on the left vertex set of a bipartite graph:
//! a set of left vertices is independent when some matching covers it.
//! Replacing every right vertex by `k` copies yields the lifted graph, whose
//! transversal matroid is exactly the k-fold union of the original one.
//! On top of that sits the robustness machinery: grouping an optimal base of
//! the union by right vertices, walking an exchange digraph, and certifying
//! that every base of the original matroid can trade its leftover elements
//! into the groups without losing independence.
//!
//! The crate is `no_std` (with `alloc`) and keeps everything deterministic:
//! iteration is in ascending index order throughout, so equal inputs produce
//! equal outputs byte for byte.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod guard;
pub mod matroid;
pub mod robust;
pub mod subset;
pub mod tau;
pub mod transversal;

pub use error::{Error, Result};
pub use subset::Subset;
