//! Shared search machinery: an exact branch-and-bound solver for maximum
//! independent sets in hypergraphs, and backtracking enumeration of
//! distance-preserving embeddings between finite point sets.

pub mod embed;
pub mod mis;

pub use embed::{for_each_embedding, DistMatrix};
pub use mis::{max_free_subset, MisOutcome};
