//! Dominating induced matchings in S_{1,1,5}-free graphs.

pub mod cli;
pub mod coloring;
pub mod graph;
pub mod io;
pub mod levels;
pub mod oracle;
pub mod patterns;
pub mod solver;

pub use coloring::{Color, ColoringState, Contradiction};
pub use graph::{verify_dim, DimCertificate, DimViolation, Edge, Graph, GraphError, Vertex};
pub use patterns::{find_induced, make_named, PatternKind, PatternWitness};
