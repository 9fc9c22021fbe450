//! Editing graphs into structurally sparse classes (bounded degeneracy,
//! treewidth, pathwidth, weak coloring number, degree, star forests), with
//! structural rounding of optimisation problems on top, hardness gadgets,
//! and exhaustive oracles for checking it all on small inputs.

pub mod bits;
pub mod cli;
pub mod combinatorial;
pub mod degeneracy;
pub mod error;
pub mod graph;
pub mod instances;
pub mod io;
pub mod lp;
pub mod oracles;
pub mod rounding;
pub mod wcol;
pub mod width;

pub use error::{Error, Result};
pub use graph::{EditKind, EditSet, Graph, VertexOrdering, Weight};
