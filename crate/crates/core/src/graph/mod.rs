//! Multigraphs with an explicit incidence function.
//!
//! A [`Graph`] maps every edge id to an unordered pair of vertex ids. Loops
//! and parallel edges are ordinary values of that map; a loop occupies two
//! incidence slots at its vertex. Two graphs compare equal exactly when they
//! have the same vertex set and the same incidence function.

mod catalog;
pub mod named;
mod parse;
mod surgery;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{connected_13_graphs, CatalogEntry};
pub use parse::parse_graph;
pub use surgery::CutRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    vertex_ids: BTreeSet<VertexId>,
    /// Endpoints are stored sorted, so equal incidence functions have equal maps.
    incidence: BTreeMap<EdgeId, [VertexId; 2]>,
}

/// Partition of the edge set into internal and external edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub internal: BTreeSet<EdgeId>,
    pub external: BTreeSet<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Vertices whose degree is neither 1 nor 3, with their degree.
    pub bad_degree: Vec<(VertexId, usize)>,
    /// Components consisting of a single edge between two leaves.
    pub bare_edges: Vec<EdgeId>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.bad_degree.is_empty() && self.bare_edges.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for (v, d) in &self.bad_degree {
            parts.push(format!("vertex {v} has degree {d}"));
        }
        for e in &self.bare_edges {
            parts.push(format!("edge {e} forms a component with two leaves"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

fn sorted(a: VertexId, b: VertexId) -> [VertexId; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

impl Graph {
    /// Builds a graph from explicit vertex ids and edges.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let vertex_ids: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut incidence = BTreeMap::new();
        for (e, a, b) in edges {
            for v in [a, b] {
                if !vertex_ids.contains(&v) {
                    return Err(Error::DanglingVertex { edge: e, vertex: v });
                }
            }
            if incidence.insert(e, sorted(a, b)).is_some() {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(Graph {
            vertex_ids,
            incidence,
        })
    }

    /// Vertices `1..=n`, edges numbered `1..=pairs.len()` in order.
    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        Graph::new(
            (1..=n).map(VertexId),
            pairs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| (EdgeId(i as u32 + 1), VertexId(a), VertexId(b))),
        )
    }

    pub(crate) fn from_parts(
        vertex_ids: BTreeSet<VertexId>,
        incidence: BTreeMap<EdgeId, [VertexId; 2]>,
    ) -> Self {
        Graph {
            vertex_ids,
            incidence,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.incidence.iter().map(|(&e, &ends)| (e, ends))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.incidence.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertex_ids.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.incidence.contains_key(&e)
    }

    pub fn ends(&self, e: EdgeId) -> Result<[VertexId; 2]> {
        self.incidence.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        matches!(self.incidence.get(&e), Some([a, b]) if a == b)
    }

    /// True when the edge ids are exactly `1..=m`.
    pub fn has_contiguous_edges(&self) -> bool {
        self.incidence
            .keys()
            .enumerate()
            .all(|(i, e)| e.0 as usize == i + 1)
    }

    pub fn max_vertex_id(&self) -> u32 {
        self.vertex_ids.iter().next_back().map_or(0, |v| v.0)
    }

    pub fn max_edge_id(&self) -> u32 {
        self.incidence.keys().next_back().map_or(0, |e| e.0)
    }

    /// Incidence slots at `v`: each incident edge once, loops twice, sorted by id.
    pub fn slots(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for (&e, &[a, b]) in &self.incidence {
            if a == v {
                out.push(e);
            }
            if b == v {
                out.push(e);
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence
            .values()
            .map(|&[a, b]| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        let mut deg: BTreeMap<VertexId, usize> = self.vertex_ids.iter().map(|&v| (v, 0)).collect();
        for &[a, b] in self.incidence.values() {
            *deg.get_mut(&a).unwrap() += 1;
            *deg.get_mut(&b).unwrap() += 1;
        }
        deg
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        matches!(self.incidence.get(&e), Some(&[a, b]) if a == v || b == v)
    }

    /// The endpoint of `e` opposite to `v` (for a loop, `v` itself).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Result<VertexId> {
        let [a, b] = self.ends(e)?;
        if a == v {
            Ok(b)
        } else if b == v {
            Ok(a)
        } else {
            Err(Error::InvalidTrail(format!("edge {e} is not incident to {v}")))
        }
    }

    /// Sorted nonincreasing multiset of vertex degrees.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.degrees().into_values().collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    pub fn leaves(&self) -> BTreeSet<VertexId> {
        self.degrees()
            .into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn classify_edges(&self) -> EdgeClass {
        let leaves = self.leaves();
        let (external, internal) = self
            .incidence
            .iter()
            .partition::<Vec<_>, _>(|(_, [a, b])| leaves.contains(a) || leaves.contains(b));
        EdgeClass {
            internal: internal.into_iter().map(|(&e, _)| e).collect(),
            external: external.into_iter().map(|(&e, _)| e).collect(),
        }
    }

    pub fn external_edges(&self) -> BTreeSet<EdgeId> {
        self.classify_edges().external
    }

    /// For an external edge, the leaf it ends at.
    pub fn leaf_of(&self, e: EdgeId) -> Option<VertexId> {
        let [a, b] = *self.incidence.get(&e)?;
        if self.degree(a) == 1 {
            Some(a)
        } else if self.degree(b) == 1 {
            Some(b)
        } else {
            None
        }
    }

    fn adjacency(&self) -> BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> {
        let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> =
            self.vertex_ids.iter().map(|&v| (v, Vec::new())).collect();
        for (&e, &[a, b]) in &self.incidence {
            adj.get_mut(&a).unwrap().push((e, b));
            if a != b {
                adj.get_mut(&b).unwrap().push((e, a));
            }
        }
        adj
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertex_ids {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(_, y) in &adj[&x] {
                    if seen.insert(y) {
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `m - n + c`, the dimension of the cycle space.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.components().len() - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// True when `e` lies on some cycle (loops always do).
    pub fn on_cycle(&self, e: EdgeId) -> Result<bool> {
        let [a, b] = self.ends(e)?;
        if a == b {
            return Ok(true);
        }
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(f, y) in &adj[&x] {
                if f != e && seen.insert(y) {
                    if y == b {
                        return Ok(true);
                    }
                    stack.push(y);
                }
            }
        }
        Ok(false)
    }

    /// Accepts iff every vertex has degree 1 or 3 and no component is a lone
    /// edge between two leaves (its coordinate would be unconstrained).
    pub fn validate_13(&self) -> ValidationReport {
        let deg = self.degrees();
        let bad_degree = deg
            .iter()
            .filter(|&(_, &d)| d != 1 && d != 3)
            .map(|(&v, &d)| (v, d))
            .collect();
        let bare_edges = self
            .incidence
            .iter()
            .filter(|(_, [a, b])| a != b && deg[a] == 1 && deg[b] == 1)
            .map(|(&e, _)| e)
            .collect();
        ValidationReport {
            bad_degree,
            bare_edges,
        }
    }

    pub fn ensure_13(&self) -> Result<()> {
        let report = self.validate_13();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::Validation(report.to_string()))
        }
    }

    /// Depth-first spanning tree from the lowest vertex id, scanning incident
    /// edges by increasing id.
    pub fn spanning_tree(&self) -> Result<BTreeSet<EdgeId>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut adj = self.adjacency();
        for list in adj.values_mut() {
            list.sort();
        }
        let mut tree = BTreeSet::new();
        let Some(&root) = self.vertex_ids.iter().next() else {
            return Ok(tree);
        };
        let mut seen = BTreeSet::from([root]);
        // Explicit stack of (vertex, next index into its adjacency list).
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (x, idx) = *top;
            let list = &adj[&x];
            if idx >= list.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (e, y) = list[idx];
            if seen.insert(y) {
                tree.insert(e);
                stack.push((y, 0));
            }
        }
        Ok(tree)
    }

    /// Lowest-id edge lying on a cycle and not in `forbidden`.
    pub fn find_cycle_edge(&self, forbidden: &BTreeSet<EdgeId>) -> Result<EdgeId> {
        for e in self.edge_ids() {
            if !forbidden.contains(&e) && self.on_cycle(e)? {
                return Ok(e);
            }
        }
        Err(Error::NoCycleEdge)
    }

    /// Renames vertices and edges; ids missing from a map are kept.
    pub fn renamed(
        &self,
        vertex_map: &BTreeMap<VertexId, VertexId>,
        edge_map: &BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Graph> {
        let rv = |v: VertexId| *vertex_map.get(&v).unwrap_or(&v);
        let vertex_ids: BTreeSet<VertexId> = self.vertex_ids.iter().map(|&v| rv(v)).collect();
        if vertex_ids.len() != self.vertex_ids.len() {
            return Err(Error::Invalid("vertex map is not injective".into()));
        }
        let mut incidence = BTreeMap::new();
        for (&e, &[a, b]) in &self.incidence {
            let f = *edge_map.get(&e).unwrap_or(&e);
            if incidence.insert(f, sorted(rv(a), rv(b))).is_some() {
                return Err(Error::Invalid("edge map is not injective".into()));
            }
        }
        Ok(Graph {
            vertex_ids,
            incidence,
        })
    }

    /// Moves the end of `e` at `from` to `to`. For a loop only one end moves.
    pub(crate) fn move_end(&mut self, e: EdgeId, from: VertexId, to: VertexId) -> Result<()> {
        let ends = self.incidence.get_mut(&e).ok_or(Error::UnknownEdge(e))?;
        let [a, b] = *ends;
        *ends = if a == from {
            sorted(to, b)
        } else if b == from {
            sorted(a, to)
        } else {
            return Err(Error::InvalidTrail(format!("edge {e} is not incident to {from}")));
        };
        Ok(())
    }

    /// FNV-1a digest of the incidence function; stable across runs and platforms.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u32| {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        for v in &self.vertex_ids {
            eat(v.0);
        }
        eat(u32::MAX);
        for (e, [a, b]) in &self.incidence {
            eat(e.0);
            eat(a.0);
            eat(b.0);
        }
        h
    }

    /// Text form readable by [`parse_graph`]. Requires vertex ids `1..=n`.
    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.vertex_count());
        for (e, [a, b]) in &self.incidence {
            s.push_str(&format!("e {e} {a} {b}\n"));
        }
        s
    }
}
