//! Constructive Ramsey witnesses for trees and unicyclic graphs versus fans.
//!
//! Given a host `G` on `2n − 1` vertices, the engines return either a fan
//! `F_m` in `G` or a copy of the pattern in the complement, and verify it.

pub mod graph;
pub mod graph6;
pub mod instances;
pub mod matching;
pub mod oracle;
pub mod trees;
pub mod witness;

pub use graph::{random_graph, Graph, GraphError, VertexSet};
pub use oracle::{check_embedding, Embedding, EmbeddingViolation};
