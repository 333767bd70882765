//! Exhaustive generation of connected {1,3}-graphs up to isomorphism.
//!
//! A {1,3}-graph is determined up to isomorphism by the multigraph on its
//! degree-3 vertices (loop counts on the diagonal) together with the number
//! of leaves hanging from each. Canonical forms minimise that data over all
//! orderings of the degree-3 vertices, which is cheap for the handful of
//! vertices these polytopes can afford.

use std::collections::BTreeMap;

use super::Graph;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub graph: Graph,
    pub vertices: usize,
    pub edges: usize,
    pub cubic_vertices: usize,
}

#[derive(Clone)]
struct Shape {
    k: usize,
    mult: Vec<Vec<u8>>,
    leaves: Vec<u8>,
}

impl Shape {
    fn edge_count(&self) -> usize {
        let mut m: usize = self.leaves.iter().map(|&l| l as usize).sum();
        for i in 0..self.k {
            for j in i..self.k {
                m += self.mult[i][j] as usize;
            }
        }
        m
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.k {
                if !seen[j] && self.mult[i][j] > 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn key(&self, perm: &[usize]) -> Vec<u8> {
        let mut key: Vec<u8> = perm.iter().map(|&p| self.leaves[p]).collect();
        for i in 0..self.k {
            for j in i..self.k {
                key.push(self.mult[perm[i]][perm[j]]);
            }
        }
        key
    }

    fn canonical(&self) -> (Vec<u8>, Vec<usize>) {
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        for perm in permutations(self.k) {
            let key = self.key(&perm);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, perm));
            }
        }
        best.expect("k >= 1")
    }

    /// Labelled graph in canonical order: degree-3 vertices `1..=k`, then
    /// leaves; external edges first, then loops, then the remaining edges.
    fn to_graph(&self, perm: &[usize]) -> Graph {
        let k = self.k;
        let mut pairs = Vec::new();
        let mut next_leaf = k as u32 + 1;
        for i in 0..k {
            for _ in 0..self.leaves[perm[i]] {
                pairs.push((i as u32 + 1, next_leaf));
                next_leaf += 1;
            }
        }
        for i in 0..k {
            for _ in 0..self.mult[perm[i]][perm[i]] {
                pairs.push((i as u32 + 1, i as u32 + 1));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                for _ in 0..self.mult[perm[i]][perm[j]] {
                    pairs.push((i as u32 + 1, j as u32 + 1));
                }
            }
        }
        Graph::from_pairs(next_leaf - 1, &pairs).expect("catalog graph")
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    heap_permute(k, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn fill(
    shape: &mut Shape,
    cap: &mut Vec<u8>,
    pair: usize,
    pairs: &[(usize, usize)],
    max_edges: usize,
    used: usize,
    out: &mut BTreeMap<Vec<u8>, (Shape, Vec<usize>)>,
) {
    if used > max_edges {
        return;
    }
    if pair == pairs.len() {
        shape.leaves = cap.clone();
        if shape.edge_count() <= max_edges && shape.connected() {
            let (key, perm) = shape.canonical();
            out.entry(key).or_insert_with(|| (shape.clone(), perm));
        }
        return;
    }
    let (i, j) = pairs[pair];
    let max = if i == j { cap[i] / 2 } else { cap[i].min(cap[j]) };
    for x in 0..=max {
        if i == j {
            cap[i] -= 2 * x;
        } else {
            cap[i] -= x;
            cap[j] -= x;
        }
        shape.mult[i][j] = x;
        shape.mult[j][i] = x;
        fill(shape, cap, pair + 1, pairs, max_edges, used + x as usize, out);
        if i == j {
            cap[i] += 2 * x;
        } else {
            cap[i] += x;
            cap[j] += x;
        }
    }
    shape.mult[i][j] = 0;
    shape.mult[j][i] = 0;
}

/// All connected {1,3}-graphs with at most `max_edges` edges, one per
/// isomorphism class, ordered by (edges, vertices, canonical form).
///
/// The lone edge `K_2` is excluded since it has no degree-3 vertex.
pub fn connected_13_graphs(max_edges: usize) -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    // A connected graph with k degree-3 vertices has at least (3k)/2 edges.
    let max_k = (2 * max_edges) / 3;
    for k in 1..=max_k {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        let mut shape = Shape {
            k,
            mult: vec![vec![0; k]; k],
            leaves: vec![0; k],
        };
        let mut cap = vec![3u8; k];
        let mut found = BTreeMap::new();
        fill(&mut shape, &mut cap, 0, &pairs, max_edges, 0, &mut found);
        for (key, (shape, perm)) in found {
            let graph = shape.to_graph(&perm);
            entries.push((
                (graph.edge_count(), graph.vertex_count(), key),
                CatalogEntry {
                    vertices: graph.vertex_count(),
                    edges: graph.edge_count(),
                    cubic_vertices: k,
                    graph,
                },
            ));
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries.into_iter().map(|(_, e)| e).collect()
}
