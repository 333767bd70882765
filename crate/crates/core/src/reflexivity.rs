//! The translate `4P_G − 𝟙` is reflexive: it is described by `A x ≤ 𝟙`
//! with integer `A`, and its dilates satisfy `(t+1)Q° ∩ Z^m = tQ ∩ Z^m`.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::ehrhart::{count, lattice_points, vertex_rows, InequalitySystem};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::solve_q;
use crate::rational::{binomial, is_integer, q, Q};

/// Largest dimension accepted by [`vertex_enumeration`].
pub const VERTEX_GUARD: usize = 7;

/// The rows of `4P_G − 𝟙`: every vertex row of `P_G` with right-hand side 1.
pub fn reflexive_system(g: &Graph) -> Result<InequalitySystem> {
    vertex_rows(g, |_| (0, 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilateCheck {
    pub t: u64,
    pub interior_of_next: usize,
    pub dilate: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexivityReport {
    pub origin_interior: bool,
    pub dilates: Vec<DilateCheck>,
    pub pass: bool,
}

fn dot(c: &[i64], x: &[i64]) -> i64 {
    c.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Compares the strict interior of `(t+1)Q` with `tQ` for `t = 0..=max_t`.
/// `Q` is the `t = 1` member of `sys`.
pub fn reflexivity_check_system(sys: &InequalitySystem, max_t: u64) -> Result<ReflexivityReport> {
    let a = sys.matrix();
    let b1: Vec<i64> = sys.rows.iter().map(|r| r.alpha + r.beta).collect();
    let origin_interior = b1.iter().all(|&x| x > 0);
    let mut dilates = Vec::new();
    if origin_interior {
        for t in 0..=max_t {
            let next = lattice_points(&a, &sys.dilated_rhs(&q(t as i64 + 1)), sys.dim)?;
            let interior: BTreeSet<Vec<i64>> = next
                .into_iter()
                .filter(|x| a.iter().zip(&b1).all(|(r, &b)| dot(r, x) < (t as i64 + 1) * b))
                .collect();
            let dilate: BTreeSet<Vec<i64>> = lattice_points(&a, &sys.dilated_rhs(&q(t as i64)), sys.dim)?
                .into_iter()
                .collect();
            dilates.push(DilateCheck {
                t,
                interior_of_next: interior.len(),
                dilate: dilate.len(),
                equal: interior == dilate,
            });
        }
    }
    let pass = origin_interior && dilates.iter().all(|d| d.equal);
    Ok(ReflexivityReport {
        origin_interior,
        dilates,
        pass,
    })
}

/// The lattice condition for `4P_G − 𝟙`, plus `|tQ ∩ Z^m| = L_{P_G}(4t)`.
pub fn reflexivity_report(g: &Graph, max_t: u64) -> Result<ReflexivityReport> {
    let mut report = reflexivity_check_system(&reflexive_system(g)?, max_t)?;
    for d in &mut report.dilates {
        let l = count(g, 4 * d.t)?.count;
        d.equal &= d.dilate as u128 == l;
    }
    report.pass = report.origin_interior && report.dilates.iter().all(|d| d.equal);
    Ok(report)
}

pub fn reflexivity_check(g: &Graph, max_t: u64) -> Result<bool> {
    Ok(reflexivity_report(g, max_t)?.pass)
}

/// `h*` of `4P_G`: `L_{P_G}(4t) = Σ_k h_k · C(t + m − k, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HStarVector {
    pub h: Vec<u128>,
}

impl HStarVector {
    pub fn is_palindromic(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }

    pub fn sum(&self) -> u128 {
        self.h.iter().sum()
    }

    /// `Σ_k h_k · C(t + m − k, m)`.
    pub fn eval(&self, t: u64) -> Q {
        let m = self.h.len() as u32 - 1;
        self.h
            .iter()
            .enumerate()
            .map(|(k, &hk)| Q::from_integer(hk.into()) * binomial(t as i64 + m as i64 - k as i64, m))
            .sum()
    }
}

pub fn h_star(g: &Graph) -> Result<HStarVector> {
    let m = g.edge_count();
    let e: Vec<Q> = (0..=m as u64 + 1)
        .map(|j| count(g, 4 * j).map(|c| Q::from_integer(c.count.into())))
        .collect::<Result<_>>()?;
    let mut h: Vec<Q> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let known: Q = (0..j)
            .map(|k| &h[k] * binomial((j + m - k) as i64, m as u32))
            .sum();
        h.push(&e[j] - known);
    }
    let bad = |why: &str| Error::Invalid(format!("h* is {why}: {h:?}"));
    if h.iter().any(|x| !is_integer(x) || x.is_negative()) {
        return Err(bad("not a nonnegative integer vector"));
    }
    let out = HStarVector {
        h: h.iter().map(|x| x.to_integer().to_u128().unwrap()).collect(),
    };
    if out.eval(m as u64 + 1) != e[m + 1] {
        return Err(bad("inconsistent with a further count"));
    }
    Ok(out)
}

/// Vertices of the member of `sys` at `at_t`, as basic feasible solutions of
/// `m`-subsets of distinct rows; sorted and deduplicated.
pub fn vertex_enumeration(sys: &InequalitySystem, at_t: &Q) -> Result<Vec<Vec<Q>>> {
    let m = sys.dim;
    if m > VERTEX_GUARD {
        return Err(Error::DimensionGuard(m));
    }
    let rhs = sys.rhs_at(at_t);
    let mut rows: Vec<(Vec<i64>, Q)> = sys.rows.iter().map(|r| r.coeffs.clone()).zip(rhs).collect();
    rows.sort();
    rows.dedup();
    let mut out = BTreeSet::new();
    let mut pick: Vec<usize> = (0..m).collect();
    if rows.len() < m {
        return Ok(Vec::new());
    }
    loop {
        let a: Vec<Vec<Q>> = pick.iter().map(|&i| rows[i].0.iter().map(|&c| q(c)).collect()).collect();
        let b: Vec<Q> = pick.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_q(a, b) {
            let feasible = rows.iter().all(|(c, r)| {
                let v: Q = c.iter().zip(&x).filter(|(&k, _)| k != 0).map(|(&k, y)| y * q(k)).sum();
                v <= *r
            });
            if feasible {
                out.insert(x);
            }
        }
        // Next m-subset in lexicographic order.
        let n = rows.len();
        let Some(i) = (0..m).rev().find(|&i| pick[i] < n - m + i) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..m {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(out.into_iter().collect())
}

/// True when every coordinate of every vertex has denominator dividing `d`.
pub fn denominators_divide(vertices: &[Vec<Q>], d: i64) -> bool {
    vertices
        .iter()
        .flatten()
        .all(|x| (x * q(d)).is_integer())
}
