//! Exact lattice Delaunay decompositions in rank at most four, the
//! generation checks for their subdivisions, the catalog of named cones of
//! rank-four forms and the face structure of the perfect cone.

pub mod catalog;
pub mod delaunay;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod faces;
pub mod generation;
pub mod io;
pub mod polytope;
pub mod verify;

pub use error::{Error, Result};
