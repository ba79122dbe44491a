//! Cosmological polytopes of graphs, tubing triangulations of their duals,
//! and exact canonical forms.

pub mod canonical;
pub mod error;
pub mod exact;
pub mod graph;
pub mod library;
pub mod polytope;
pub mod triangulation;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};
