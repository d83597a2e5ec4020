//! Exact directed feedback vertex and arc set solvers over tree
//! decompositions and sphere-cut decompositions of plane digraphs, with
//! brute-force references, connectivity-pattern tools and instance generators.

pub mod digraph;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod patterns;
pub mod planar;
pub mod planar_dp;
pub mod solution;
pub mod treewidth;

pub use digraph::{Arc, ArcSet, DiGraph, Vertex, VertexOrder, VertexSet};
pub use error::{Error, Result};
pub use oracle::{OracleResult, Witness};
pub use planar::{Embedding, ScDecomposition};
pub use solution::Problem;
pub use treewidth::{NiceTreeDecomposition, TreeDecomposition};
