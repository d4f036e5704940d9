//! Shadows of ordered graphs: shadow operators, homogeneous blocks and
//! types, the simplex-lattice shadow calculus, hereditary speeds, and
//! exhaustive searches that check the associated inequalities on small
//! vertex counts.

pub mod blocks;
pub mod error;
pub mod families;
pub mod family;
pub mod graph;
pub mod lattice;
pub mod parallel;
pub mod search;
pub mod speed;

pub use error::{Error, Result};
pub use family::GraphFamily;
pub use graph::OrderedGraph;
pub use lattice::{LatticePoint, LatticeSet};
