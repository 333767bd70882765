use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{floor_i64, Q};
use crate::wnni::Weighting;

/// One constraint `coeffs · w ≤ alpha·t + beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub alpha: i64,
    pub beta: i64,
}

/// A parametric family of polytopes in `R^dim`, one for each `t ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub dim: usize,
    pub rows: Vec<Row>,
}

fn dot(c: &[i64], w: &[Q]) -> Q {
    c.iter()
        .zip(w)
        .filter(|(&a, _)| a != 0)
        .map(|(&a, x)| x * Q::from_integer(a.into()))
        .sum()
}

impl InequalitySystem {
    /// Right-hand sides `alpha·t + beta`.
    pub fn rhs_at(&self, t: &Q) -> Vec<Q> {
        self.rows
            .iter()
            .map(|r| t * Q::from_integer(r.alpha.into()) + Q::from_integer(r.beta.into()))
            .collect()
    }

    /// Right-hand sides of `s·P`, where `P` is the member at `t = 1`.
    pub fn dilated_rhs(&self, s: &Q) -> Vec<Q> {
        self.rows
            .iter()
            .map(|r| s * Q::from_integer((r.alpha + r.beta).into()))
            .collect()
    }

    /// Integer right-hand sides: for integer points, `c·w ≤ x` iff `c·w ≤ ⌊x⌋`.
    pub fn floor_rhs(rhs: &[Q]) -> Result<Vec<i64>> {
        rhs.iter().map(floor_i64).collect()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.coeffs.clone()).collect()
    }

    pub fn satisfies(&self, w: &[Q], rhs: &[Q]) -> bool {
        self.rows.iter().zip(rhs).all(|(r, b)| dot(&r.coeffs, w) <= *b)
    }

    pub fn contains(&self, w: &Weighting, t: &Q) -> Result<bool> {
        if w.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: w.len(),
            });
        }
        Ok(self.satisfies(&w.0, &self.rhs_at(t)))
    }

    pub fn distinct_rows(&self) -> usize {
        self.rows.iter().collect::<BTreeSet<_>>().len()
    }

    /// True when every row is homogeneous in `t` (`beta = 0`).
    pub fn is_homogeneous(&self) -> bool {
        self.rows.iter().all(|r| r.beta == 0)
    }
}

/// Perimeter and metric rows at every degree-3 vertex, in vertex order.
///
/// With slots `{a, b, c}` (a loop fills two slots) the rows are
/// `a+b+c ≤ t`, `a−b−c ≤ 0`, `b−a−c ≤ 0` and `c−a−b ≤ 0`.
pub fn inequality_system(g: &Graph) -> Result<InequalitySystem> {
    vertex_rows(g, |slot| if slot.is_none() { (1, 0) } else { (0, 0) })
}

pub(crate) fn vertex_rows(
    g: &Graph,
    rhs: impl Fn(Option<usize>) -> (i64, i64),
) -> Result<InequalitySystem> {
    g.ensure_13()?;
    if !g.has_contiguous_edges() {
        return Err(Error::NonContiguousEdges);
    }
    let m = g.edge_count();
    let mut rows = Vec::new();
    for v in g.vertices() {
        let slots = g.slots(v);
        if slots.len() != 3 {
            continue;
        }
        let idx: Vec<usize> = slots.iter().map(|e| e.0 as usize - 1).collect();
        let mut perimeter = vec![0i64; m];
        for &i in &idx {
            perimeter[i] += 1;
        }
        let (alpha, beta) = rhs(None);
        rows.push(Row {
            coeffs: perimeter,
            alpha,
            beta,
        });
        for k in 0..3 {
            let mut c = vec![0i64; m];
            for (j, &i) in idx.iter().enumerate() {
                c[i] += if j == k { 1 } else { -1 };
            }
            let (alpha, beta) = rhs(Some(k));
            rows.push(Row {
                coeffs: c,
                alpha,
                beta,
            });
        }
    }
    Ok(InequalitySystem { dim: m, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::rational::{q, qr};

    #[test]
    fn claw_rows() {
        let s = inequality_system(&claw()).unwrap();
        assert_eq!((s.dim, s.rows.len()), (3, 4));
        assert!(s.contains(&Weighting::from_ints(&[0, 0, 0]), &q(0)).unwrap());
        assert!(!s.contains(&Weighting::from_ints(&[1, 0, 0]), &q(1)).unwrap());
        assert!(s.contains(&Weighting::from_ints(&[1, 1, 0]), &q(2)).unwrap());
    }

    #[test]
    fn dumbbell_vertex_rows() {
        let s = inequality_system(&dumbbell()).unwrap();
        assert_eq!(s.rows.len(), 8);
        // Vertex 1 has slots {1, 1, 3}.
        let first: Vec<_> = s.rows[..4].iter().map(|r| (r.coeffs.clone(), r.alpha)).collect();
        assert_eq!(
            first,
            vec![
                (vec![2, 0, 1], 1),
                (vec![0, 0, -1], 0),
                (vec![0, 0, -1], 0),
                (vec![-2, 0, 1], 0),
            ]
        );
        // The figure's vertex (1/4, 1/4, 1/2) lies on 2w1 + w3 = 1.
        let w = Weighting(vec![qr(1, 4), qr(1, 4), qr(1, 2)]);
        assert!(s.contains(&w, &q(1)).unwrap());
    }

    #[test]
    fn theta_rows() {
        let s = inequality_system(&theta()).unwrap();
        assert_eq!(s.rows.len(), 8);
        assert_eq!(s.distinct_rows(), 4);
        assert!(s.contains(&Weighting::from_ints(&[1, 0, 1]), &q(2)).unwrap());
    }

    #[test]
    fn rejects_invalid_graphs() {
        let p3 = Graph::from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(matches!(inequality_system(&p3), Err(Error::Validation(_))));
        let s = inequality_system(&claw()).unwrap();
        assert!(s.contains(&Weighting::from_ints(&[0, 0]), &q(1)).is_err());
    }
}
