//! Normal forms for trees: caterpillars, ordered spines and sorted leaves.
//!
//! The spine of a caterpillar is the path formed by its non-leaf vertices.
//! Positions along the spine are tracked explicitly while moves are applied,
//! because some moves change which vertex sits at a position.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{apply_nni, MoveSequence, Trail};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

fn edge_between(g: &Graph, x: VertexId, y: VertexId) -> EdgeId {
    g.slots(x)
        .into_iter()
        .find(|&e| g.other_end(e, x).ok() == Some(y))
        .expect("adjacent spine vertices")
}

fn bfs(g: &Graph, start: VertexId) -> BTreeMap<VertexId, (usize, Option<VertexId>)> {
    let mut info = BTreeMap::from([(start, (0, None))]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let d = info[&x].0;
        for e in g.slots(x) {
            let y = g.other_end(e, x).unwrap();
            info.entry(y).or_insert_with(|| {
                queue.push_back(y);
                (d + 1, Some(x))
            });
        }
    }
    info
}

fn farthest(info: &BTreeMap<VertexId, (usize, Option<VertexId>)>) -> VertexId {
    // Ties go to the lowest id.
    let (&v, _) = info
        .iter()
        .max_by_key(|&(&v, &(d, _))| (d, std::cmp::Reverse(v)))
        .expect("nonempty");
    v
}

/// A longest path of a tree by double BFS from the lowest vertex id.
pub fn longest_path(t: &Graph) -> Vec<VertexId> {
    let Some(start) = t.vertices().next() else {
        return Vec::new();
    };
    let x = farthest(&bfs(t, start));
    let info = bfs(t, x);
    let mut cur = Some(farthest(&info));
    let mut path = Vec::new();
    while let Some(v) = cur {
        path.push(v);
        cur = info[&v].1;
    }
    path
}

fn inner_vertices(g: &Graph) -> BTreeSet<VertexId> {
    g.degrees()
        .into_iter()
        .filter(|&(_, d)| d >= 2)
        .map(|(v, _)| v)
        .collect()
}

pub fn is_caterpillar(g: &Graph) -> bool {
    g.is_tree() && spine_path(g).is_some()
}

/// The path of inner vertices in one orientation, if they form a path.
fn spine_path(g: &Graph) -> Option<Vec<VertexId>> {
    let inner = inner_vertices(g);
    let inner_nbrs = |v: VertexId| -> Vec<VertexId> {
        g.slots(v)
            .into_iter()
            .map(|e| g.other_end(e, v).unwrap())
            .filter(|y| inner.contains(y))
            .collect()
    };
    if inner.iter().any(|&v| inner_nbrs(v).len() > 2) {
        return None;
    }
    let Some(&start) = inner.iter().find(|&&v| inner_nbrs(v).len() <= 1) else {
        return if inner.is_empty() { Some(Vec::new()) } else { None };
    };
    let mut path = vec![start];
    let mut prev: Option<VertexId> = None;
    let mut cur = start;
    while let Some(next) = inner_nbrs(cur).into_iter().find(|&y| Some(y) != prev) {
        path.push(next);
        prev = Some(cur);
        cur = next;
    }
    Some(path)
}

/// The spine of a caterpillar, oriented so its degree sequence is
/// lexicographically largest (ties: lower end id first).
pub fn spine(c: &Graph) -> Result<Vec<VertexId>> {
    if !c.is_tree() {
        return Err(Error::NotATree);
    }
    let fwd = spine_path(c).ok_or(Error::NotACaterpillar)?;
    let mut rev = fwd.clone();
    rev.reverse();
    let degs = |p: &[VertexId]| p.iter().map(|&v| c.degree(v)).collect::<Vec<_>>();
    let key_f = (degs(&fwd), std::cmp::Reverse(fwd.first().copied()));
    let key_r = (degs(&rev), std::cmp::Reverse(rev.first().copied()));
    Ok(if key_r > key_f { rev } else { fwd })
}

/// Moves and spine positions for one caterpillar under rearrangement.
pub(super) struct Sorter {
    pub g: Graph,
    pub spine: Vec<VertexId>,
    pub moves: Vec<Trail>,
}

impl Sorter {
    pub fn new(g: Graph, spine: Vec<VertexId>) -> Self {
        Sorter {
            g,
            spine,
            moves: Vec::new(),
        }
    }

    fn apply(&mut self, w: Trail) -> Result<()> {
        self.g = apply_nni(&self.g, &w)?;
        self.moves.push(w);
        Ok(())
    }

    fn leaves_at(&self, i: usize) -> Vec<EdgeId> {
        let p = self.spine[i];
        self.g
            .slots(p)
            .into_iter()
            .filter(|&e| self.g.degree(self.g.other_end(e, p).unwrap()) == 1)
            .collect()
    }

    fn position_of_leaf(&self, f: EdgeId) -> usize {
        let [a, b] = self.g.ends(f).unwrap();
        let inner = if self.g.degree(a) == 1 { b } else { a };
        self.spine.iter().position(|&p| p == inner).expect("leaf on spine")
    }

    fn link(&self, i: usize, j: usize) -> EdgeId {
        edge_between(&self.g, self.spine[i], self.spine[j])
    }

    /// Exchanges the vertices at spine positions `i` and `i + 1` together with
    /// their remaining leaves. Requires at least three spine vertices.
    fn swap_spine(&mut self, i: usize) -> Result<()> {
        let k = self.spine.len();
        debug_assert!(k >= 3 && i + 1 < k);
        let a = if i > 0 { self.link(i - 1, i) } else { self.leaves_at(0)[0] };
        let b = if i + 2 < k { self.link(i + 1, i + 2) } else { self.leaves_at(k - 1)[0] };
        let w = Trail {
            a,
            u: self.spine[i],
            e: self.link(i, i + 1),
            v: self.spine[i + 1],
            b,
        };
        self.apply(w)?;
        self.spine.swap(i, i + 1);
        Ok(())
    }

    /// Exchanges leaf `x` at position `lo` with leaf `y` at position `hi > lo`;
    /// every position strictly between carries no leaf.
    fn swap_leaves(&mut self, lo: usize, x: EdgeId, hi: usize, y: EdgeId) -> Result<()> {
        let k = self.spine.len();
        if hi == lo + 1 {
            let w = Trail {
                a: x,
                u: self.spine[lo],
                e: self.link(lo, hi),
                v: self.spine[hi],
                b: y,
            };
            return self.apply(w);
        }
        if hi == k - 1 && self.g.degree(self.spine[hi]) == 2 {
            return self.relay(lo, (lo + 1..=hi).collect(), x, y);
        }
        if lo == 0 && self.g.degree(self.spine[lo]) == 2 {
            return self.relay(hi, (0..hi).rev().collect(), y, x);
        }
        Err(Error::BadTarget(
            "moving a leaf across degree-2 spine vertices is supported only next to a spine end"
                .into(),
        ))
    }

    /// Exchanges leaf `x` at the hub with the single leaf `z` of the degree-2
    /// spine end, through a chain of degree-2 vertices. `chain` lists the
    /// positions from the hub outwards; takes `chain.len()` moves and reverses
    /// the vertices along the chain.
    fn relay(&mut self, hub: usize, chain: Vec<usize>, x: EdgeId, z: EdgeId) -> Result<()> {
        let h = self.spine[hub];
        let c: Vec<VertexId> = chain.iter().map(|&p| self.spine[p]).collect();
        let g = c.len() - 1;
        let mut eps = vec![edge_between(&self.g, h, c[0])];
        for t in 0..g {
            eps.push(edge_between(&self.g, c[t], c[t + 1]));
        }
        self.apply(Trail {
            a: x,
            u: h,
            e: eps[0],
            v: c[0],
            b: eps[1],
        })?;
        let mut attach = eps[0];
        for t in 2..=g {
            self.apply(Trail {
                a: eps[t],
                u: c[t - 1],
                e: eps[t - 1],
                v: h,
                b: attach,
            })?;
            attach = eps[t - 1];
        }
        self.apply(Trail {
            a: z,
            u: c[g],
            e: eps[g],
            v: h,
            b: attach,
        })?;
        for (j, &p) in chain.iter().enumerate() {
            self.spine[p] = c[g - j];
        }
        Ok(())
    }

    /// Bubble sort to a nonincreasing degree sequence, one move per transposition.
    pub fn order(&mut self) -> Result<()> {
        let degs: Vec<usize> = self.spine.iter().map(|&v| self.g.degree(v)).collect();
        let inversions = |d: &[usize]| {
            let mut n = 0;
            for i in 0..d.len() {
                for j in i + 1..d.len() {
                    n += (d[i] < d[j]) as usize;
                }
            }
            n
        };
        let mut rdegs = degs.clone();
        rdegs.reverse();
        let (fi, ri) = (inversions(&degs), inversions(&rdegs));
        if ri < fi
            || (ri == fi && rdegs > degs)
            || (ri == fi && rdegs == degs && self.spine.last() < self.spine.first())
        {
            self.spine.reverse();
        }
        let k = self.spine.len();
        if k <= 2 {
            return Ok(());
        }
        loop {
            let mut swapped = false;
            for i in 0..k - 1 {
                if self.g.degree(self.spine[i]) < self.g.degree(self.spine[i + 1]) {
                    self.swap_spine(i)?;
                    swapped = true;
                }
            }
            if !swapped {
                return Ok(());
            }
        }
    }

    /// Routes leaves so that position `i` carries exactly `chunks[i]`.
    pub fn sort(&mut self, chunks: &[BTreeSet<EdgeId>]) -> Result<()> {
        for (i, chunk) in chunks.iter().enumerate() {
            loop {
                let Some(&f) = chunk.iter().find(|&&f| self.position_of_leaf(f) != i) else {
                    break;
                };
                let mut s = self.position_of_leaf(f);
                if s < i {
                    return Err(Error::BadTarget(format!("edge {f} is assigned twice")));
                }
                while s > i {
                    let lo = (i..s)
                        .rev()
                        .find(|&p| !self.leaves_at(p).is_empty())
                        .ok_or_else(|| Error::BadTarget("profile mismatch".into()))?;
                    let here = self.leaves_at(lo);
                    let partner = here
                        .iter()
                        .copied()
                        .find(|e| !chunk.contains(e))
                        .or_else(|| (lo != i).then(|| here[0]))
                        .ok_or_else(|| Error::BadTarget("profile mismatch".into()))?;
                    self.swap_leaves(lo, partner, s, f)?;
                    s = lo;
                }
            }
        }
        Ok(())
    }

    pub fn profile(&self) -> Vec<usize> {
        (0..self.spine.len()).map(|i| self.leaves_at(i).len()).collect()
    }

    pub fn chunks(&self) -> Vec<BTreeSet<EdgeId>> {
        (0..self.spine.len())
            .map(|i| self.leaves_at(i).into_iter().collect())
            .collect()
    }
}

/// Moves taking a tree to a caterpillar. Each move inserts an off-path inner
/// vertex into a longest path, lengthening it by one.
pub(super) fn caterpillar_moves(t: &Graph) -> Result<(Vec<Trail>, Graph)> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut g = t.clone();
    let mut moves = Vec::new();
    while spine_path(&g).is_none() {
        let path = longest_path(&g);
        let on_path: BTreeSet<VertexId> = path.iter().copied().collect();
        let mut best: Option<(EdgeId, usize, VertexId)> = None;
        for (idx, &u) in path.iter().enumerate().take(path.len() - 1).skip(1) {
            for e in g.slots(u) {
                let v = g.other_end(e, u)?;
                if !on_path.contains(&v) && g.degree(v) >= 2 && best.is_none_or(|(b, _, _)| e < b) {
                    best = Some((e, idx, v));
                }
            }
        }
        let (e, idx, v) = best.expect("a tree that is not a caterpillar has an off-path inner vertex");
        let u = path[idx];
        let a = edge_between(&g, path[idx - 1], u).min(edge_between(&g, u, path[idx + 1]));
        let b = g.slots(v).into_iter().find(|&f| f != e).expect("inner vertex");
        let w = Trail { a, u, e, v, b };
        g = apply_nni(&g, &w)?;
        moves.push(w);
    }
    Ok((moves, g))
}

pub fn caterpillarize(t: &Graph) -> Result<MoveSequence> {
    Ok(MoveSequence::from_moves(caterpillar_moves(t)?.0))
}

/// Moves making the spine degree sequence nonincreasing.
pub fn order_spine(c: &Graph) -> Result<MoveSequence> {
    let mut s = Sorter::new(c.clone(), spine(c)?);
    s.order()?;
    Ok(MoveSequence::from_moves(s.moves))
}

/// Moves placing the external edges in `target` order along the spine
/// returned by [`spine`]: the first `l_1` entries hang from the first spine
/// vertex, where `l_1` is its current number of leaves, and so on.
pub fn sort_external(c: &Graph, target: &[EdgeId]) -> Result<MoveSequence> {
    let mut s = Sorter::new(c.clone(), spine(c)?);
    let mut sorted_target = target.to_vec();
    sorted_target.sort();
    let external: Vec<EdgeId> = c.external_edges().into_iter().collect();
    if sorted_target != external {
        return Err(Error::BadTarget("not a permutation of the external edges".into()));
    }
    if s.spine.len() <= 1 {
        return Ok(MoveSequence::default());
    }
    let mut chunks = Vec::new();
    let mut rest = target;
    for n in s.profile() {
        let (head, tail) = rest.split_at(n);
        chunks.push(head.iter().copied().collect());
        rest = tail;
    }
    s.sort(&chunks)?;
    Ok(MoveSequence::from_moves(s.moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    /// A caterpillar whose spine vertices `1..=k` have the given degrees.
    pub(crate) fn caterpillar_with_spine(degs: &[usize]) -> Graph {
        let k = degs.len() as u32;
        let mut pairs = Vec::new();
        let mut next = k + 1;
        for (i, &d) in degs.iter().enumerate() {
            let spine_nbrs = if k == 1 { 0 } else if i == 0 || i + 1 == k as usize { 1 } else { 2 };
            for _ in 0..d - spine_nbrs {
                pairs.push((i as u32 + 1, next));
                next += 1;
            }
        }
        for c in 1..k {
            pairs.push((c, c + 1));
        }
        Graph::from_pairs(next - 1, &pairs).unwrap()
    }

    fn spine_degrees(g: &Graph) -> Vec<usize> {
        spine(g).unwrap().iter().map(|&v| g.degree(v)).collect()
    }

    #[test]
    fn caterpillar_predicate() {
        assert!(is_caterpillar(&claw()));
        assert!(is_caterpillar(&caterpillar_13(4)));
        assert!(!is_caterpillar(&spider_13()));
        assert!(!is_caterpillar(&theta()));
    }

    #[test]
    fn caterpillar_input_needs_no_moves() {
        assert!(caterpillarize(&claw()).unwrap().is_empty());
        assert!(caterpillarize(&caterpillar_13(5)).unwrap().is_empty());
        assert_eq!(caterpillarize(&theta()), Err(Error::NotATree));
    }

    #[test]
    fn spider_becomes_caterpillar() {
        let t = spider_13();
        let seq = caterpillarize(&t).unwrap();
        assert!(!seq.is_empty());
        let steps = seq.steps(&t).unwrap();
        for pair in steps.windows(2) {
            assert!(longest_path(&pair[1]).len() > longest_path(&pair[0]).len());
        }
        let c = steps.last().unwrap();
        assert!(is_caterpillar(c));
        assert_eq!(c.degree_sequence(), t.degree_sequence());
        assert_eq!(c.external_edges(), t.external_edges());
        assert_eq!(spine_degrees(c), vec![3, 3, 3, 3]);
    }

    #[test]
    fn spine_4523() {
        let c = caterpillar_with_spine(&[4, 5, 2, 3]);
        assert_eq!(spine(&c).unwrap(), (1..=4).map(VertexId).collect::<Vec<_>>());
        let seq = order_spine(&c).unwrap();
        // Two adjacent transpositions: (4,5) and (2,3).
        assert_eq!(seq.len(), 2);
        let d = seq.replay(&c).unwrap();
        assert_eq!(spine_degrees(&d), vec![5, 4, 3, 2]);
        assert_eq!(d.external_edges(), c.external_edges());
    }

    #[test]
    fn ordered_spines_need_no_moves() {
        assert!(order_spine(&caterpillar_with_spine(&[3, 3, 3])).unwrap().is_empty());
        assert!(order_spine(&caterpillar_with_spine(&[5, 4, 2])).unwrap().is_empty());
        assert!(order_spine(&claw()).unwrap().is_empty());
    }

    #[test]
    fn sort_identity_and_errors() {
        let c = caterpillar_13(2);
        assert!(sort_external(&c, &[EdgeId(1), EdgeId(2), EdgeId(3), EdgeId(4)]).unwrap().is_empty());
        assert!(sort_external(&c, &[EdgeId(1), EdgeId(2), EdgeId(3)]).is_err());
        assert!(sort_external(&c, &[EdgeId(1), EdgeId(2), EdgeId(3), EdgeId(5)]).is_err());
    }

    fn placed(g: &Graph) -> Vec<BTreeSet<EdgeId>> {
        Sorter::new(g.clone(), spine(g).unwrap()).chunks()
    }

    #[test]
    fn single_adjacent_swap() {
        // Leaves 2 (at 1) and 3 (at 2) change sides in one move.
        let c = caterpillar_13(2);
        let seq = sort_external(&c, &[EdgeId(1), EdgeId(3), EdgeId(2), EdgeId(4)]).unwrap();
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn two_step_gadget() {
        // {c,d,e} | {a,b} to {a,b,c} | {d,e} through {c,a,e} | {d,b}.
        let g = caterpillar_with_spine(&[4, 3]);
        let (c, d, e, a, b) = (EdgeId(1), EdgeId(2), EdgeId(3), EdgeId(4), EdgeId(5));
        let seq = sort_external(&g, &[a, b, c, d, e]).unwrap();
        assert_eq!(seq.len(), 2);
        let h = seq.replay(&g).unwrap();
        assert_eq!(placed(&h), vec![BTreeSet::from([a, b, c]), BTreeSet::from([d, e])]);
    }

    #[test]
    fn full_reversal() {
        let c = caterpillar_13(2);
        let target: Vec<EdgeId> = (1..=4).rev().map(EdgeId).collect();
        let h = sort_external(&c, &target).unwrap().replay(&c).unwrap();
        assert_eq!(
            placed(&h),
            vec![BTreeSet::from([EdgeId(4), EdgeId(3)]), BTreeSet::from([EdgeId(2), EdgeId(1)])]
        );
    }

    #[test]
    fn relay_through_degree_two_tail() {
        // Spine (4,3,2,2,2): the last leaf must cross three degree-2 vertices.
        let c = caterpillar_with_spine(&[4, 3, 2, 2, 2]);
        let ext: Vec<EdgeId> = c.external_edges().into_iter().collect();
        let mut target = ext.clone();
        let last = target.len() - 1;
        target.swap(0, last);
        let h = sort_external(&c, &target).unwrap().replay(&c).unwrap();
        assert!(is_caterpillar(&h));
        let mut flat = Vec::new();
        for chunk in placed(&h) {
            flat.push(chunk);
        }
        assert!(flat[0].contains(&target[0]));
        assert!(flat[4].contains(&target[last]));
        assert_eq!(spine_degrees(&h), vec![4, 3, 2, 2, 2]);
    }
}
