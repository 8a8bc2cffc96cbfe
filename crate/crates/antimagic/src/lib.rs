//! Local antimagic edge labelings: graph families, constructive labelings,
//! magic rectangles, a universal verifier, and an exact backtracking solver.
//!
//! A *local antimagic labeling* of a connected graph `G = (V, E)` is a
//! bijection `f : E -> {1, ..., |E|}` such that any two adjacent vertices
//! receive distinct induced sums `f⁺(v) = Σ f(e)` over incident edges.
//! The number of distinct induced sums is the color number `c(f)`, and
//! `χ_la(G)` is the minimum of `c(f)` over all local antimagic labelings.

pub mod construct;
pub mod error;
pub mod graph;
pub mod labeling;
pub mod magic;
pub mod solver;

pub use construct::Labeled;
pub use error::Error;
pub use graph::Graph;
pub use labeling::{EdgeLabeling, LabelingMatrix, VerificationReport};
pub use magic::MagicRectangle;
pub use solver::{ChiLaCertificate, SearchLimits};
