//! Input graphs, dynamic subgraphs, bounded in-degree orientation, I/O and
//! generators.

mod dynamic;
pub mod generate;
pub mod io;
mod orient;
mod static_graph;

pub use dynamic::DynamicSubgraph;
pub use io::GraphFormat;
pub use orient::{orient_bounded, Orientation};
pub use static_graph::StaticGraph;
