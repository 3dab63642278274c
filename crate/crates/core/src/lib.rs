//! Digital topology on simple graphs.
//!
//! Graphs stand for digital spaces. The crate decides contractibility under
//! the four contractible moves, recognizes digital spheres, disks and
//! manifolds, compresses manifolds by disk merges, computes clique-complex
//! invariants, and builds nerve graphs of box covers and grid digitizations.

pub mod canon;
pub mod classify;
pub mod dtransform;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod homotopy;
pub mod invariants;
mod memo;
pub mod small;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::Graph;
pub use verdict::{Budget, Certificate, Outcome, Verdict};
