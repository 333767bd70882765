//! Cutting a cycle edge into two pendant edges, and gluing them back.

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub original_edge: EdgeId,
    /// `new_edges.0` hangs from the smaller endpoint of the original edge.
    pub new_edges: (EdgeId, EdgeId),
    pub new_leaves: (VertexId, VertexId),
}

impl Graph {
    /// Splits the cycle edge `e = xy` (x <= y) into `x - leaf'` and `y - leaf''`.
    ///
    /// Fresh ids are one past the current maxima, i.e. `m+1, m+2` and
    /// `n+1, n+2` on a graph with ids `1..=m` and `1..=n`.
    pub fn cut_edge(&self, e: EdgeId) -> Result<(Graph, CutRecord)> {
        if !self.on_cycle(e)? {
            return Err(Error::NotOnCycle(e));
        }
        let [x, y] = self.ends(e)?;
        let e1 = EdgeId(self.max_edge_id() + 1);
        let e2 = EdgeId(self.max_edge_id() + 2);
        let l1 = VertexId(self.max_vertex_id() + 1);
        let l2 = VertexId(self.max_vertex_id() + 2);

        let mut vertex_ids = self.vertex_ids.clone();
        vertex_ids.insert(l1);
        vertex_ids.insert(l2);
        let mut incidence = self.incidence.clone();
        incidence.remove(&e);
        incidence.insert(e1, [x, l1]);
        incidence.insert(e2, [y, l2]);

        let rec = CutRecord {
            original_edge: e,
            new_edges: (e1, e2),
            new_leaves: (l1, l2),
        };
        Ok((Graph::from_parts(vertex_ids, incidence), rec))
    }

    /// Inverse of [`Graph::cut_edge`]: removes both pendant edges and their
    /// leaves and joins the remaining ends by the original edge.
    pub fn glue_edges(&self, rec: &CutRecord) -> Result<Graph> {
        let (e1, e2) = rec.new_edges;
        let (l1, l2) = rec.new_leaves;
        if self.has_edge(rec.original_edge) {
            return Err(Error::BadCutRecord(format!(
                "edge {} is still present",
                rec.original_edge
            )));
        }
        let mut ends = Vec::with_capacity(2);
        for (e, leaf) in [(e1, l1), (e2, l2)] {
            let [a, b] = self
                .ends(e)
                .map_err(|_| Error::BadCutRecord(format!("edge {e} is missing")))?;
            if self.degree(leaf) != 1 || (a != leaf && b != leaf) {
                return Err(Error::BadCutRecord(format!(
                    "edge {e} is not external at leaf {leaf}"
                )));
            }
            let inner = if a == leaf { b } else { a };
            if self.degree(inner) == 1 {
                return Err(Error::BadCutRecord(format!("edge {e} joins two leaves")));
            }
            ends.push(inner);
        }
        let mut vertex_ids = self.vertex_ids.clone();
        vertex_ids.remove(&l1);
        vertex_ids.remove(&l2);
        let mut incidence = self.incidence.clone();
        incidence.remove(&e1);
        incidence.remove(&e2);
        let (x, y) = (ends[0], ends[1]);
        incidence.insert(rec.original_edge, if x <= y { [x, y] } else { [y, x] });
        Ok(Graph::from_parts(vertex_ids, incidence))
    }
}
