//! Planar graph coarsening with succinct auxiliary structures.
//!
//! A graph is cut into connected clouds of logarithmic size, the clouds are
//! contracted into a weighted minor with `O(n / log n)` nodes, and the minor
//! drives balanced separators, a two-level mini/micro hierarchy with a compact
//! query-able encoding, and tree decompositions.

pub mod cli;
pub mod cloudpart;
mod error;
pub mod graph;
pub mod hierarchy;
pub mod minor;
pub mod separator;
pub mod succinct;
pub mod treedec;

pub use error::{Error, Result};

/// Vertex label, `1..=n`.
pub type Vertex = u32;
