use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (length {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("select({rank}) exceeds the number of set bits ({ones})")]
    NotFound { rank: usize, ones: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph has a self-loop at vertex {0}")]
    SelfLoop(u32),

    #[error("graph has a repeated edge {0}-{1}")]
    MultiEdge(u32, u32),

    #[error("arc {arc} of vertex {vertex} is not present")]
    AbsentArc { vertex: u32, arc: usize },

    #[error("orientation stalled with {remaining} vertices left: density bound {density} violated")]
    DensityViolated { density: usize, remaining: usize },

    #[error("graph is not planar")]
    NonPlanar,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("encoding format error: {0}")]
    Format(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
