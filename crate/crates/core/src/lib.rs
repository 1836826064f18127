//! Rectilinear planarity testing for independent-parallel series-parallel
//! graphs of maximum degree four, with drawing witnesses.

pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod spirality;
pub mod spq;
pub mod tester;
pub mod witness;

pub use error::{
    DecompositionError, DrawError, InternalInfeasible, OracleError, ParseError, Rejection,
};
pub use graph::{EdgeId, Graph, GraphClass, VertexId};
pub use spirality::{SNodeSummary, SpiralitySet};
pub use spq::{NodeId, NodeKind, RootedView, SpqTree};
pub use tester::{component_sets, test, test_with, TestOptions, TestReport};
pub use witness::{draw, Drawing, OrthoRep, SpiralityAssignment, Witness};
