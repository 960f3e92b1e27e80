//! Exact combinatorics of k-uniform set families on a ground set `[n]`.
//!
//! The crate builds k-uniform families as bit patterns, counts their
//! intersecting subfamilies of every size exactly (big integers, no
//! rounding), evaluates the probability that a random subfamily is
//! intersecting, and searches for / certifies families maximising these
//! quantities.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `interfam-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod counting;
pub mod exactmath;
pub mod family;
pub mod probability;
pub mod search;

pub use exactmath::{BigCount, ExactRatio};
pub use family::{DegreeSequence, FamilyError, KSet, SetFamily};
