//! Hypergraphical Bernardi processes on bipartite ribbon graphs, Jaeger trees, the interior
//! polynomial, and an exact verifier for dissections and shellings of root polytopes.

pub mod bernardi;
pub mod edgeset;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod hypertree;
pub mod jaeger;
pub mod oracle;
pub mod ordinary;
pub mod poly;
pub mod polytope;
pub mod tour;

pub use edgeset::EdgeSet;
pub use error::{Error, GraphError, Result};
pub use graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph, RibbonGraph};
pub use hypertree::Hypertree;
pub use poly::IntegerPolynomial;
