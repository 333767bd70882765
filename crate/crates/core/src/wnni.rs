//! The weighted NNI map and its piecewise-linear structure.
//!
//! At a site with trail `(a, u, e, v, b)`, let `c` be the third slot at `u`
//! and `d` the third slot at `v`. The move keeps every weight except
//!
//! ```text
//! w'_e = w_e + max(w_a + w_c, w_b + w_d) - max(w_b + w_c, w_a + w_d)
//! ```
//!
//! Which terms attain the maxima splits weight space into four half-open
//! cases, each acting by an integer matrix of determinant one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::linalg::IntMatrix;
use crate::nni::{apply_nni, Trail};
use crate::rational::Q;

/// Exact weights indexed by edge ids `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weighting(pub Vec<Q>);

impl Weighting {
    pub fn zeros(m: usize) -> Self {
        Weighting(vec![Q::from_integer(0.into()); m])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weighting(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, e: EdgeId) -> &Q {
        &self.0[e.0 as usize - 1]
    }

    pub fn set(&mut self, e: EdgeId, x: Q) {
        self.0[e.0 as usize - 1] = x;
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        if !g.has_contiguous_edges() {
            return Err(Error::NonContiguousEdges);
        }
        if self.len() != g.edge_count() {
            return Err(Error::Dimension {
                expected: g.edge_count(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NniSite {
    pub trail: Trail,
    /// Remaining slot at `u` after removing one `e` and one `a`.
    pub c: EdgeId,
    /// Remaining slot at `v` after removing one `e` and one `b`.
    pub d: EdgeId,
}

impl NniSite {
    /// The same site in the graph after the move, where it undoes the move.
    pub fn flipped(&self) -> NniSite {
        NniSite {
            trail: self.trail.flipped(),
            c: self.d,
            d: self.c,
        }
    }
}

fn remaining_slot(g: &Graph, at: crate::graph::VertexId, used: [EdgeId; 2]) -> Result<EdgeId> {
    let mut slots = g.slots(at);
    if slots.len() != 3 {
        return Err(Error::InvalidTrail(format!(
            "vertex {at} has degree {}, not 3",
            slots.len()
        )));
    }
    for e in used {
        let i = slots.iter().position(|&s| s == e).ok_or_else(|| {
            Error::InvalidTrail(format!("edge {e} does not occupy a slot at {at}"))
        })?;
        slots.remove(i);
    }
    Ok(slots[0])
}

pub fn resolve_site(g: &Graph, trail: &Trail) -> Result<NniSite> {
    trail.validate(g)?;
    Ok(NniSite {
        trail: *trail,
        c: remaining_slot(g, trail.u, [trail.e, trail.a])?,
        d: remaining_slot(g, trail.v, [trail.e, trail.b])?,
    })
}

/// Every valid weighted NNI site of `g`, each pivot in both orientations.
pub fn all_sites(g: &Graph) -> Vec<NniSite> {
    let mut out = Vec::new();
    for (e, [x, y]) in g.edges() {
        if x == y || g.degree(x) != 3 || g.degree(y) != 3 {
            continue;
        }
        for (u, v) in [(x, y), (y, x)] {
            let mut at_u = g.slots(u);
            at_u.dedup();
            let mut at_v = g.slots(v);
            at_v.dedup();
            for &a in at_u.iter().filter(|&&a| a != e) {
                for &b in at_v.iter().filter(|&&b| b != e && b != a) {
                    let trail = Trail { a, u, e, v, b };
                    if let Ok(site) = resolve_site(g, &trail) {
                        out.push(site);
                    }
                }
            }
        }
    }
    out
}

/// Half-open case of the max-formula at a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    /// `a+c >= b+d` and `a+d >= b+c`.
    A,
    /// `a+c >= b+d` and `a+d < b+c`.
    B,
    /// `a+c < b+d` and `a+d >= b+c`.
    C,
    /// `a+c < b+d` and `a+d < b+c`.
    D,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::A, CaseTag::B, CaseTag::C, CaseTag::D];

    /// Which side of the two comparisons the case lies on.
    pub fn sides(self) -> (bool, bool) {
        match self {
            CaseTag::A => (true, true),
            CaseTag::B => (true, false),
            CaseTag::C => (false, true),
            CaseTag::D => (false, false),
        }
    }

    pub fn from_sides(first: bool, second: bool) -> CaseTag {
        match (first, second) {
            (true, true) => CaseTag::A,
            (true, false) => CaseTag::B,
            (false, true) => CaseTag::C,
            (false, false) => CaseTag::D,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The normals of the two comparisons: `χa+χc−χb−χd` and `χa+χd−χb−χc`.
/// Case A is where both functionals are nonnegative.
pub fn comparison_normals(site: &NniSite, m: usize) -> [Vec<i64>; 2] {
    let t = &site.trail;
    let mut n1 = vec![0i64; m];
    let mut n2 = vec![0i64; m];
    let idx = |e: EdgeId| e.0 as usize - 1;
    n1[idx(t.a)] += 1;
    n1[idx(site.c)] += 1;
    n1[idx(t.b)] -= 1;
    n1[idx(site.d)] -= 1;
    n2[idx(t.a)] += 1;
    n2[idx(site.d)] += 1;
    n2[idx(t.b)] -= 1;
    n2[idx(site.c)] -= 1;
    [n1, n2]
}

pub fn case_of(w: &Weighting, site: &NniSite) -> CaseTag {
    let t = &site.trail;
    let (a, b, c, d) = (w.get(t.a), w.get(t.b), w.get(site.c), w.get(site.d));
    CaseTag::from_sides(a + c >= b + d, a + d >= b + c)
}

/// Change of the pivot weight under the max-formula.
pub fn pivot_delta(w: &Weighting, site: &NniSite) -> Q {
    let t = &site.trail;
    let (a, b, c, d) = (w.get(t.a), w.get(t.b), w.get(site.c), w.get(site.d));
    let m1 = std::cmp::max(a + c, b + d);
    let m2 = std::cmp::max(b + c, a + d);
    m1 - m2
}

/// The pivot row of a case: `χe + χp − χq`.
pub fn case_row(site: &NniSite, tag: CaseTag, m: usize) -> Vec<i64> {
    let t = &site.trail;
    let (p, q) = match tag {
        CaseTag::A => (site.c, site.d),
        CaseTag::B => (t.a, t.b),
        CaseTag::C => (t.b, t.a),
        CaseTag::D => (site.d, site.c),
    };
    let mut row = vec![0i64; m];
    row[t.e.0 as usize - 1] += 1;
    row[p.0 as usize - 1] += 1;
    row[q.0 as usize - 1] -= 1;
    row
}

/// An affine map `w ↦ U w + b` with `det U = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub matrix: IntMatrix,
    pub offset: Vec<i64>,
}

impl UnimodularMap {
    pub fn identity(m: usize) -> Self {
        UnimodularMap {
            matrix: IntMatrix::identity(m),
            offset: vec![0; m],
        }
    }

    pub fn apply(&self, w: &[Q]) -> Vec<Q> {
        self.matrix
            .apply_q(w)
            .into_iter()
            .zip(&self.offset)
            .map(|(x, &b)| x + Q::from_integer(b.into()))
            .collect()
    }

    pub fn det(&self) -> Result<i64> {
        self.matrix.det()
    }
}

/// Identity with the pivot row replaced by the case row.
pub fn case_matrix(site: &NniSite, tag: CaseTag, m: usize) -> UnimodularMap {
    let mut map = UnimodularMap::identity(m);
    map.matrix.set_row(site.trail.e.0 as usize - 1, case_row(site, tag, m));
    map
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    // Sign normalised so the first nonzero entry is positive.
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// The distinct nonzero comparison hyperplanes of a site, as primitive normals.
pub fn site_hyperplanes(site: &NniSite, m: usize) -> Vec<Hyperplane> {
    let mut out: Vec<Hyperplane> = Vec::new();
    for n in comparison_normals(site, m) {
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let h = Hyperplane { normal: primitive(n) };
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

/// One weighted NNI: the graph move plus the pivot update.
pub fn apply_weighted_nni(g: &Graph, w: &Weighting, site: &NniSite) -> Result<(Graph, Weighting)> {
    w.check(g)?;
    let expected = resolve_site(g, &site.trail)?;
    if expected != *site {
        return Err(Error::InvalidTrail(format!(
            "site slots c={}, d={} do not match the graph (c={}, d={})",
            site.c, site.d, expected.c, expected.d
        )));
    }
    let h = apply_nni(g, &site.trail)?;
    let mut w2 = w.clone();
    let e = site.trail.e;
    w2.set(e, w.get(e) + pivot_delta(w, site));
    Ok((h, w2))
}

/// Replays a sequence of trails on weights, resolving each site in turn.
pub fn replay_weighted(g: &Graph, w: &Weighting, moves: &[Trail]) -> Result<(Graph, Weighting)> {
    let mut cur = (g.clone(), w.clone());
    for t in moves {
        let site = resolve_site(&cur.0, t)?;
        cur = apply_weighted_nni(&cur.0, &cur.1, &site)?;
    }
    Ok(cur)
}
