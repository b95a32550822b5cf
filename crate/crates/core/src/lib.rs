//! Exact algorithms for NP-hard problems on intersection graphs of fat objects:
//! clique-weighted balanced separators, κ-partitions, weighted tree
//! decompositions, treewidth dynamic programs with representative sets, and
//! disjoint-path routing in grid boxes.

pub mod contraction;
pub mod cubewiring;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod oracle;
pub mod problem;
pub mod rankbased;
pub mod rational;
pub mod treedecomp;
pub mod separator;
pub mod solvers;
pub mod weight;

pub use error::{Error, Result};
pub use geometry::{FatObject, IntersectionGraph, ObjectSet, Point, Shape};
pub use graph::Graph;
pub use weight::WeightFunction;
