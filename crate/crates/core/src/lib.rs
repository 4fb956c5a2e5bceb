//! Lower and upper bounds on graph bandwidth from vertex partitions.
//!
//! A partition of the vertices into `k` ordered blocks of sizes `m` such
//! that no edge joins blocks more than `r` apart exists only if the
//! bandwidth is small; proving that every such partition has a far edge
//! (a positive lower bound on the minimal partition problem) therefore
//! proves a bandwidth lower bound. This crate builds semidefinite
//! relaxations of that problem, solves them with a first-order method,
//! certifies the resulting dual bounds, and supplies annealing heuristics
//! for the matching upper bounds.

pub mod admm;
mod error;
pub mod graph;
pub mod heuristics;
pub mod partition;
pub mod registry;
pub mod sdp;

pub use error::{Error, Result};
