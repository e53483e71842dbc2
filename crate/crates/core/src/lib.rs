pub mod almost;
pub mod bounds;
pub mod certificate;
pub mod excluder;
pub mod format;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod ratio;

pub use graph::{Graph, GraphBuilder, GraphError, VertexSet};
pub use ratio::Rational;
