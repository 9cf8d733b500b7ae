//! Exact unit-distance graph toolkit.
//!
//! Builds unit-distance graphs with coordinates in Q(√3, √11), transforms
//! them with Minkowski sums, spindling, trimming and circling, and computes
//! their optimal weighted independence ratio `α* = 1/χ_f` exactly by
//! alternating a rational linear program over symmetric weightings with an
//! exact maximum-weight independent set solver.

pub mod alphastar;
pub mod bitset;
pub mod dataset;
pub mod export;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod lp;
pub mod mwis;
pub mod ops;
pub mod simplex;
pub mod structures;
pub mod symmetry;
#[cfg(test)]
mod testutil;

pub use bitset::Bitset;
pub use field::{FieldElem, Rational};
pub use geometry::{Point, RotationSpec};
pub use graph::{Adjacency, SimpleGraph, UDGraph};
