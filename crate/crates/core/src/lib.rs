//! Enumeration of the permutation class `Av(3124, 4312)`.
//!
//! The crate builds the count from the ground up: brute-force listings of
//! the class, three geometric grid classes and their word encodings, regular
//! languages picking one word per permutation, exact power series, and the
//! inflation calculus that turns simple permutations into the whole class.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod grid;
pub mod inflation;
pub mod lang;
pub mod perm;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use perm::Permutation;
