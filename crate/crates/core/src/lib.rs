//! NNI sequences between {1,3}-graphs, the weighted NNI bijection between
//! their Liu–Osserman polytopes, and exact Ehrhart counting for them.

pub mod error;
pub mod graph;
pub mod ehrhart;
pub mod linalg;
pub mod lp;
pub mod nni;
pub mod rational;
pub mod reflexivity;
pub mod scissors;
pub mod wnni;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
