//! Nearest-neighbor interchanges and the sequences built from them.
//!
//! A move is described by a [`Trail`] `(a, u, e, v, b)`: the end of `a` at
//! `u` is moved to `v` and the end of `b` at `v` is moved to `u`. Moves never
//! rename anything, so a [`MoveSequence`] is replayed in the labels of its
//! source graph and renamed once at the end.

mod caterpillar;
mod connected;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

pub use caterpillar::{caterpillarize, is_caterpillar, longest_path, order_spine, sort_external, spine};
pub use connected::{graph_sequence, pivots_respect_trees};
pub use tree::tree_sequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Trail {
    pub a: EdgeId,
    pub u: VertexId,
    pub e: EdgeId,
    pub v: VertexId,
    pub b: EdgeId,
}

impl fmt::Display for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.a, self.u, self.e, self.v, self.b)
    }
}

impl Trail {
    pub fn new(a: u32, u: u32, e: u32, v: u32, b: u32) -> Self {
        Trail {
            a: EdgeId(a),
            u: VertexId(u),
            e: EdgeId(e),
            v: VertexId(v),
            b: EdgeId(b),
        }
    }

    /// Parses `a,u,e,v,b`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidTrail(format!("expected a,u,e,v,b; got {s:?}")))?;
        match parts[..] {
            [a, u, e, v, b] => Ok(Trail::new(a, u, e, v, b)),
            _ => Err(Error::InvalidTrail(format!("expected five fields; got {s:?}"))),
        }
    }

    /// The trail undoing this move in the resulting graph: `a` now hangs at `v`.
    pub fn flipped(&self) -> Trail {
        Trail {
            u: self.v,
            v: self.u,
            ..*self
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTrail(msg));
        if self.a == self.e || self.b == self.e || self.a == self.b {
            return bad(format!("edges of {self} are not distinct"));
        }
        let [x, y] = g.ends(self.e)?;
        if x == y {
            return bad(format!("pivot {} is a loop", self.e));
        }
        if !((x == self.u && y == self.v) || (x == self.v && y == self.u)) {
            return bad(format!("pivot {} does not join {} and {}", self.e, self.u, self.v));
        }
        if !g.is_incident(self.a, self.u) {
            return bad(format!("edge {} is not incident to {}", self.a, self.u));
        }
        if !g.is_incident(self.b, self.v) {
            return bad(format!("edge {} is not incident to {}", self.b, self.v));
        }
        Ok(())
    }

    pub(crate) fn renamed(
        &self,
        vertex_map: &BTreeMap<VertexId, VertexId>,
        edge_map: &BTreeMap<EdgeId, EdgeId>,
    ) -> Trail {
        let rv = |v: VertexId| *vertex_map.get(&v).unwrap_or(&v);
        let re = |e: EdgeId| *edge_map.get(&e).unwrap_or(&e);
        Trail {
            a: re(self.a),
            u: rv(self.u),
            e: re(self.e),
            v: rv(self.v),
            b: re(self.b),
        }
    }
}

/// Applies one NNI. Degrees, components and the internal/external partition
/// are unchanged.
pub fn apply_nni(g: &Graph, w: &Trail) -> Result<Graph> {
    w.validate(g)?;
    let mut h = g.clone();
    h.move_end(w.a, w.u, w.v)?;
    h.move_end(w.b, w.v, w.u)?;
    Ok(h)
}

/// Moves in source labels, then a renaming onto the target's labels.
///
/// Empty maps mean the identity. `edge_map` fixes every external edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub moves: Vec<Trail>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Spanning trees of source and target that contain every pivot.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning_trees: Option<(BTreeSet<EdgeId>, BTreeSet<EdgeId>)>,
    /// Fingerprints of the graph after each move, if recorded.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub snapshots: Vec<u64>,
}

impl MoveSequence {
    pub fn from_moves(moves: Vec<Trail>) -> Self {
        MoveSequence {
            moves,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Graphs after each move, in source labels; `steps[0]` is `g`.
    pub fn steps(&self, g: &Graph) -> Result<Vec<Graph>> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(g.clone());
        for (i, w) in self.moves.iter().enumerate() {
            let next = apply_nni(out.last().unwrap(), w)?;
            if let Some(&fp) = self.snapshots.get(i) {
                if fp != next.fingerprint() {
                    return Err(Error::Invalid(format!("snapshot mismatch after move {}", i + 1)));
                }
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Applies every move and then the renaming.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let last = self.steps(g)?.pop().unwrap();
        last.renamed(&self.vertex_map, &self.edge_map)
    }

    /// Records fingerprints of every intermediate graph.
    pub fn with_snapshots(mut self, g: &Graph) -> Result<Self> {
        self.snapshots.clear();
        let steps = self.steps(g)?;
        self.snapshots = steps[1..].iter().map(Graph::fingerprint).collect();
        Ok(self)
    }

    pub fn map_edge(&self, e: EdgeId) -> EdgeId {
        *self.edge_map.get(&e).unwrap_or(&e)
    }
}
