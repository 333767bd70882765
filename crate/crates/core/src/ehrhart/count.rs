use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::system::{inequality_system, InequalitySystem};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::lp::bounding_box;
use crate::rational::{ceil_i64, floor_i64, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    Backtracking,
    TreeDp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(serialize_with = "crate::rational::serialize_pair")]
    #[serde(deserialize_with = "crate::rational::deserialize_pair")]
    pub t: Q,
    pub count: u128,
    pub method: CountMethod,
}

/// A system `A x ≤ b` with integer data, a bounding box and per-depth
/// residual minima, ready for depth-first enumeration in coordinate order.
struct Prepared {
    dim: usize,
    b: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// Nonzero `(row, coeff)` pairs of each column.
    by_var: Vec<Vec<(usize, i64)>>,
    /// `minrest[k][i]`: least value of row `i` over coordinates after `k`.
    minrest: Vec<Vec<i64>>,
}

fn overflow() -> Error {
    Error::Overflow("lattice point enumeration")
}

impl Prepared {
    /// `None` when the polytope has no integer points.
    fn new(a: &[Vec<i64>], rhs: &[Q], dim: usize) -> Result<Option<Prepared>> {
        let b: Vec<i64> = rhs.iter().map(floor_i64).collect::<Result<_>>()?;
        if a.iter().zip(&b).any(|(r, &bi)| r.iter().all(|&c| c == 0) && bi < 0) {
            return Ok(None);
        }
        let aq: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect();
        if rhs.iter().any(|x| x.is_negative()) {
            return Err(Error::Unbounded);
        }
        let bx = bounding_box(&aq, rhs, dim)?;
        let mut lo = Vec::with_capacity(dim);
        let mut hi = Vec::with_capacity(dim);
        for (l, h) in &bx {
            lo.push(ceil_i64(l)?);
            hi.push(floor_i64(h)?);
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(None);
        }
        let mut by_var = vec![Vec::new(); dim];
        for (i, r) in a.iter().enumerate() {
            for (j, &c) in r.iter().enumerate() {
                if c != 0 {
                    by_var[j].push((i, c));
                }
            }
        }
        let mut minrest = vec![vec![0i64; a.len()]; dim];
        for k in (0..dim.saturating_sub(1)).rev() {
            let mut next = minrest[k + 1].clone();
            for &(i, c) in &by_var[k + 1] {
                let m = (c * lo[k + 1]).min(c * hi[k + 1]);
                next[i] = next[i].checked_add(m).ok_or_else(overflow)?;
            }
            minrest[k] = next;
        }
        Ok(Some(Prepared {
            dim,
            b,
            lo,
            hi,
            by_var,
            minrest,
        }))
    }

    /// Feasible range of coordinate `k` given the partial row sums `s`.
    fn range(&self, k: usize, s: &[i64]) -> (i64, i64) {
        let (mut lo, mut hi) = (self.lo[k], self.hi[k]);
        for &(i, c) in &self.by_var[k] {
            let r = self.b[i] - s[i] - self.minrest[k][i];
            if c > 0 {
                hi = hi.min(r.div_euclid(c));
            } else {
                lo = lo.max(-r.div_euclid(-c));
            }
        }
        (lo, hi)
    }

    fn assign(&self, k: usize, x: i64, s: &mut [i64]) {
        for &(i, c) in &self.by_var[k] {
            s[i] += c * x;
        }
    }

    fn count_from(&self, k: usize, s: &mut [i64]) -> u128 {
        let (lo, hi) = self.range(k, s);
        if lo > hi {
            return 0;
        }
        if k + 1 == self.dim {
            return (hi - lo + 1) as u128;
        }
        let mut total = 0u128;
        for x in lo..=hi {
            self.assign(k, x, s);
            total += self.count_from(k + 1, s);
            self.assign(k, -x, s);
        }
        total
    }

    fn count(&self) -> u128 {
        if self.dim == 0 {
            return 1;
        }
        let s0 = vec![0i64; self.b.len()];
        let (lo, hi) = self.range(0, &s0);
        if self.dim == 1 {
            return (hi - lo + 1).max(0) as u128;
        }
        (lo..=hi)
            .into_par_iter()
            .map(|x| {
                let mut s = s0.clone();
                self.assign(0, x, &mut s);
                self.count_from(1, &mut s)
            })
            .sum()
    }

    fn visit_from(&self, k: usize, s: &mut [i64], x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == self.dim {
            out.push(x.clone());
            return;
        }
        let (lo, hi) = self.range(k, s);
        for v in lo..=hi {
            self.assign(k, v, s);
            x.push(v);
            self.visit_from(k + 1, s, x, out);
            x.pop();
            self.assign(k, -v, s);
        }
    }
}

/// Number of integer points of `{x : A x ≤ rhs}`; the region must be bounded
/// and contain the origin.
pub fn count_points(a: &[Vec<i64>], rhs: &[Q], dim: usize) -> Result<u128> {
    Ok(Prepared::new(a, rhs, dim)?.map_or(0, |p| p.count()))
}

/// Integer points of `{x : A x ≤ rhs}` in lexicographic order.
pub fn lattice_points(a: &[Vec<i64>], rhs: &[Q], dim: usize) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    if let Some(p) = Prepared::new(a, rhs, dim)? {
        let mut s = vec![0i64; p.b.len()];
        p.visit_from(0, &mut s, &mut Vec::with_capacity(dim), &mut out);
    }
    Ok(out)
}

/// `|tP ∩ Z^m|` by depth-first search over coordinates in edge-id order.
/// `t` may be any nonnegative rational.
pub fn count_backtracking(sys: &InequalitySystem, t: &Q) -> Result<CountReport> {
    if t.is_negative() {
        return Err(Error::Invalid(format!("dilation {t} is negative")));
    }
    let count = count_points(&sys.matrix(), &sys.rhs_at(t), sys.dim)?;
    Ok(CountReport {
        t: t.clone(),
        count,
        method: CountMethod::Backtracking,
    })
}

/// `h[x] = Σ f[y]·g[z]` over `z ∈ [|x−y|, min(x+y, T−x−y)]`.
fn combine(f: &[u128], g: &[u128]) -> Vec<u128> {
    let t = f.len() - 1;
    let mut prefix = vec![0u128; t + 2];
    for (z, &v) in g.iter().enumerate() {
        prefix[z + 1] = prefix[z] + v;
    }
    let mut h = vec![0u128; t + 1];
    for (x, hx) in h.iter_mut().enumerate() {
        for (y, &fy) in f.iter().enumerate().take(t - x + 1) {
            let lo = x.abs_diff(y);
            let hi = (x + y).min(t - x - y);
            if fy != 0 && lo <= hi {
                *hx += fy * (prefix[hi + 1] - prefix[lo]);
            }
        }
    }
    h
}

/// `|tP_G ∩ Z^m|` for a {1,3}-tree by message passing towards a root.
pub fn count_tree_dp(g: &Graph, t: u64) -> Result<CountReport> {
    g.ensure_13()?;
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let Some(root) = g.vertices().find(|&v| g.degree(v) == 3) else {
        return Err(Error::Unbounded);
    };
    let size = usize::try_from(t).map_err(|_| overflow())? + 1;
    // Preorder with parent edges; children are handled before parents in reverse.
    let mut order: Vec<(VertexId, Option<EdgeId>)> = vec![(root, None)];
    let mut i = 0;
    while i < order.len() {
        let (v, up) = order[i];
        for e in g.slots(v) {
            if Some(e) != up {
                order.push((g.other_end(e, v)?, Some(e)));
            }
        }
        i += 1;
    }
    let mut msg: std::collections::BTreeMap<EdgeId, Vec<u128>> = Default::default();
    for &(v, up) in order.iter().rev() {
        let down: Vec<EdgeId> = g.slots(v).into_iter().filter(|&e| Some(e) != up).collect();
        let table = match down.len() {
            0 => vec![1u128; size],
            2 => combine(&msg[&down[0]], &msg[&down[1]]),
            3 => {
                let h = combine(&msg[&down[0]], &msg[&down[1]]);
                let total = h.iter().zip(&msg[&down[2]]).map(|(a, b)| a * b).sum();
                return Ok(CountReport {
                    t: q(t as i64),
                    count: total,
                    method: CountMethod::TreeDp,
                });
            }
            _ => unreachable!("degrees are 1 or 3"),
        };
        msg.insert(up.expect("only the root lacks a parent edge"), table);
    }
    unreachable!("the root is visited last")
}

/// `L(t)` for a {1,3}-graph, by tree DP on trees and backtracking otherwise.
pub fn count(g: &Graph, t: u64) -> Result<CountReport> {
    if g.is_tree() && g.vertices().any(|v| g.degree(v) == 3) {
        count_tree_dp(g, t)
    } else {
        count_backtracking(&inequality_system(g)?, &q(t as i64))
    }
}
