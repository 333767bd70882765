use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Errors raised by graph parsing, surgery, move construction and counting.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),

    #[error("edge {edge} references undeclared vertex {vertex}")]
    DanglingVertex { edge: EdgeId, vertex: VertexId },

    #[error("edge ids must be 1..{m}; found {found}")]
    EdgeIdRange { m: usize, found: EdgeId },

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("not a {{1,3}}-graph: {0}")]
    Validation(String),

    #[error("edge {0} does not lie on a cycle")]
    NotOnCycle(EdgeId),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is not a caterpillar")]
    NotACaterpillar,

    #[error("no cycle edge outside the forbidden set")]
    NoCycleEdge,

    #[error("cut record does not match graph: {0}")]
    BadCutRecord(String),

    #[error("invalid trail: {0}")]
    InvalidTrail(String),

    #[error("incompatible graphs: {0}")]
    Incompatible(String),

    #[error("incompatible leaf target: {0}")]
    BadTarget(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("weights require edge ids 1..m")]
    NonContiguousEdges,

    #[error("point is outside the polytope")]
    OutsidePolytope,

    #[error("interpolation check failed for residue {residue} at t = {t}: predicted {predicted}, counted {counted}")]
    Interpolation {
        residue: u32,
        t: u64,
        predicted: String,
        counted: String,
    },

    #[error("certified error {0} exceeds the precision budget")]
    Precision(f64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension {0} exceeds the vertex-enumeration guard")]
    DimensionGuard(usize),

    #[error("polytope is unbounded or the origin is infeasible")]
    Unbounded,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
