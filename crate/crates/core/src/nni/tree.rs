//! Move sequences between two trees with the same degree sequence and the
//! same external edges.

use std::collections::BTreeMap;

use super::caterpillar::{caterpillar_moves, spine, Sorter};
use super::{MoveSequence, Trail};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Caterpillar with nonincreasing spine, reached from the input by `moves`.
struct Normal {
    moves: Vec<Trail>,
    sorter: Sorter,
}

fn normalize(t: &Graph) -> Result<Normal> {
    let (moves, c) = caterpillar_moves(t)?;
    let sp = spine(&c)?;
    let mut sorter = Sorter::new(c, sp);
    sorter.order()?;
    Ok(Normal { moves, sorter })
}

pub(super) fn check_compatible(g: &Graph, h: &Graph) -> Result<()> {
    if g.degree_sequence() != h.degree_sequence() {
        return Err(Error::Incompatible("degree sequences differ".into()));
    }
    if g.external_edges() != h.external_edges() {
        return Err(Error::Incompatible("external edge sets differ".into()));
    }
    if !g.edge_ids().eq(h.edge_ids()) {
        return Err(Error::Incompatible("edge id sets differ".into()));
    }
    Ok(())
}

fn drop_identity<K: Ord + Copy + PartialEq>(map: BTreeMap<K, K>) -> BTreeMap<K, K> {
    map.into_iter().filter(|(k, v)| k != v).collect()
}

fn leaf_end(g: &Graph, f: EdgeId) -> VertexId {
    g.leaf_of(f).expect("external edge")
}

/// Normalizes both trees, sorts the leaves of the first to match the second,
/// then appends the second tree's normalization undone.
pub fn tree_sequence(t: &Graph, t2: &Graph) -> Result<MoveSequence> {
    if !t.is_tree() || !t2.is_tree() {
        return Err(Error::NotATree);
    }
    check_compatible(t, t2)?;

    let n1 = normalize(t)?;
    let n2 = normalize(t2)?;
    let mut s = n1.sorter;
    let target = &n2.sorter;

    let mut vmap = BTreeMap::new();
    let mut emap = BTreeMap::new();
    if s.spine.is_empty() {
        // A single vertex or a single edge.
        for (x, y) in t.vertices().zip(t2.vertices()) {
            vmap.insert(x, y);
        }
    } else {
        let degs = |s: &Sorter| s.spine.iter().map(|&v| s.g.degree(v)).collect::<Vec<_>>();
        if degs(&s) != degs(target) {
            return Err(Error::Incompatible("spine degree sequences differ".into()));
        }
        s.sort(&target.chunks())?;
        for (i, (&x, &y)) in s.spine.iter().zip(&target.spine).enumerate() {
            vmap.insert(x, y);
            if i + 1 < s.spine.len() {
                let link = |g: &Graph, p: &[VertexId]| {
                    g.slots(p[i])
                        .into_iter()
                        .find(|&e| g.other_end(e, p[i]).ok() == Some(p[i + 1]))
                        .unwrap()
                };
                emap.insert(link(&s.g, &s.spine), link(&target.g, &target.spine));
            }
        }
        for f in t.external_edges() {
            vmap.insert(leaf_end(&s.g, f), leaf_end(&target.g, f));
        }
    }

    let inv_v: BTreeMap<VertexId, VertexId> = vmap.iter().map(|(&k, &v)| (v, k)).collect();
    let inv_e: BTreeMap<EdgeId, EdgeId> = emap.iter().map(|(&k, &v)| (v, k)).collect();
    let mut moves = n1.moves;
    moves.extend(s.moves);
    let undo = n2.moves.iter().chain(&target.moves).rev();
    moves.extend(undo.map(|w| w.flipped().renamed(&inv_v, &inv_e)));

    Ok(MoveSequence {
        moves,
        edge_map: drop_identity(emap),
        vertex_map: drop_identity(vmap),
        ..Default::default()
    })
}
