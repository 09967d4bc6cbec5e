//! Exact combinatorics of the max-norm: pattern-avoidance densities on the
//! integer line and lattice, independence numbers of boxes and tori,
//! isometric-copy detection for batons and their Cartesian products, verified
//! periodic colourings, and a constructive monochromatic-copy finder for
//! geometric progressions.
//!
//! Everything certified is computed over arbitrary-precision rationals; all
//! witnesses (free sets, covers, colourings, partitions, transcripts) are
//! re-checkable from their serialized form.

pub mod baton;
pub mod colouring;
pub mod density;
pub mod exec;
pub mod geometry;
pub mod infinite;
pub mod products;
pub mod rat;
pub mod search;

pub use baton::{Baton, BatonError, Point};
pub use rat::Rat;
