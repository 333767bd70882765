//! Move sequences between connected graphs by induction on cycle rank: cut a
//! cycle edge in both graphs, connect the cut graphs, and glue back.

use std::collections::{BTreeMap, BTreeSet};

use super::tree::{check_compatible, tree_sequence};
use super::MoveSequence;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

type Trees = (BTreeSet<EdgeId>, BTreeSet<EdgeId>);

/// A sequence taking `g` to `g2`. With `restrict_to_spanning_trees`, every
/// pivot lies in the returned spanning tree of `g` and its image lies in the
/// returned spanning tree of `g2`.
pub fn graph_sequence(g: &Graph, g2: &Graph, restrict_to_spanning_trees: bool) -> Result<MoveSequence> {
    if !g.is_connected() || !g2.is_connected() {
        return Err(Error::Disconnected);
    }
    check_compatible(g, g2)?;
    let trees = if restrict_to_spanning_trees {
        Some((g.spanning_tree()?, g2.spanning_tree()?))
    } else {
        None
    };
    let mut seq = induct(g, g2, trees.as_ref())?;
    seq.spanning_trees = trees;
    Ok(seq)
}

fn induct(g: &Graph, g2: &Graph, trees: Option<&Trees>) -> Result<MoveSequence> {
    if g.cycle_rank() == 0 {
        return tree_sequence(g, g2);
    }
    let none = BTreeSet::new();
    let e = g.find_cycle_edge(trees.map_or(&none, |t| &t.0))?;
    let e2 = g2.find_cycle_edge(trees.map_or(&none, |t| &t.1))?;

    // Name the cut edge of g2 `e` as well; `tau` is undone at the end.
    let tau: BTreeMap<EdgeId, EdgeId> = if e == e2 {
        BTreeMap::new()
    } else {
        BTreeMap::from([(e, e2), (e2, e)])
    };
    let t = |f: EdgeId| *tau.get(&f).unwrap_or(&f);
    let g2t = g2.renamed(&BTreeMap::new(), &tau)?;

    let (h, rec) = g.cut_edge(e)?;
    let (h2, rec2) = g2t.cut_edge(e)?;
    debug_assert_eq!(rec.new_edges, rec2.new_edges);
    let (m1, m2) = rec.new_edges;

    let sub_trees = trees.map(|(s, s2)| {
        let mut s: BTreeSet<EdgeId> = s.clone();
        let mut s2: BTreeSet<EdgeId> = s2.iter().map(|&f| t(f)).collect();
        for set in [&mut s, &mut s2] {
            set.insert(m1);
            set.insert(m2);
        }
        (s, s2)
    });
    let sub = induct(&h, &h2, sub_trees.as_ref())?;

    // The pendant edges glue back into `e`; a move exchanging both is void.
    let mut moves = Vec::with_capacity(sub.moves.len());
    for mut w in sub.moves.iter().copied() {
        let a_cut = w.a == m1 || w.a == m2;
        let b_cut = w.b == m1 || w.b == m2;
        if a_cut && b_cut {
            continue;
        }
        if a_cut {
            w.a = e;
        }
        if b_cut {
            w.b = e;
        }
        moves.push(w);
    }

    let edge_map = g
        .edge_ids()
        .map(|f| (f, t(if f == e { e } else { sub.map_edge(f) })))
        .filter(|(f, img)| f != img)
        .collect();
    let vertex_map = g
        .vertices()
        .filter_map(|v| sub.vertex_map.get(&v).map(|&w| (v, w)))
        .collect();
    Ok(MoveSequence {
        moves,
        edge_map,
        vertex_map,
        ..Default::default()
    })
}

/// Checks that every pivot is an internal edge of `g` lying in the source
/// spanning tree, with its image in the target spanning tree.
pub fn pivots_respect_trees(g: &Graph, seq: &MoveSequence) -> bool {
    let Some((s, s2)) = &seq.spanning_trees else {
        return false;
    };
    let internal = g.classify_edges().internal;
    seq.moves
        .iter()
        .all(|w| s.contains(&w.e) && internal.contains(&w.e) && s2.contains(&seq.map_edge(w.e)))
}
