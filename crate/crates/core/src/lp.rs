//! Exact linear programming over the rationals.
//!
//! Only programs whose origin is feasible are needed here (every polytope in
//! this crate contains the origin), so a single-phase tableau simplex with
//! Bland's rule suffices. Free variables are split as `x = x⁺ − x⁻`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, point: Vec<Q> },
    Unbounded,
}

/// Maximizes `c·x` subject to `A x ≤ b`, `x` free. Requires `b ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Result<LpOutcome> {
    let rows = a.len();
    let n = c.len();
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::Invalid("simplex needs a feasible origin".into()));
    }
    // Columns: x⁺ (n), x⁻ (n), slacks (rows), rhs.
    let cols = 2 * n + rows;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(rows + 1);
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: row.len(),
            });
        }
        let mut r = vec![Q::zero(); cols + 1];
        for j in 0..n {
            r[j] = row[j].clone();
            r[n + j] = -row[j].clone();
        }
        r[2 * n + i] = Q::from_integer(1.into());
        r[cols] = b[i].clone();
        t.push(r);
    }
    // Objective row holds reduced costs; optimal when none is negative.
    let mut z = vec![Q::zero(); cols + 1];
    for j in 0..n {
        z[j] = -c[j].clone();
        z[n + j] = c[j].clone();
    }
    t.push(z);
    let mut basis: Vec<usize> = (0..rows).map(|i| 2 * n + i).collect();

    loop {
        let Some(enter) = (0..cols).find(|&j| t[rows][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        basis[p] = enter;
    }

    let mut full = vec![Q::zero(); cols];
    for (i, &bv) in basis.iter().enumerate() {
        full[bv] = t[i][cols].clone();
    }
    let point: Vec<Q> = (0..n).map(|j| &full[j] - &full[n + j]).collect();
    Ok(LpOutcome::Optimal {
        value: t[rows][cols].clone(),
        point,
    })
}

/// Componentwise bounds `[lo_j, hi_j]` of `{A x ≤ b}`.
pub fn bounding_box(a: &[Vec<Q>], b: &[Q], n: usize) -> Result<Vec<(Q, Q)>> {
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = vec![Q::zero(); n];
        c[j] = Q::from_integer(1.into());
        let hi = match maximize(a, b, &c)? {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        };
        c[j] = Q::from_integer((-1).into());
        let lo = match maximize(a, b, &c)? {
            LpOutcome::Optimal { value, .. } => -value,
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        };
        out.push((lo, hi));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_programs() {
        // max x + y on x + 2y <= 4, 3x + y <= 6, x, y >= 0: optimum 14/5 at (8/5, 6/5).
        let a = vec![qs(&[1, 2]), qs(&[3, 1]), qs(&[-1, 0]), qs(&[0, -1])];
        let b = qs(&[4, 6, 0, 0]);
        match maximize(&a, &b, &qs(&[1, 1])).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, qr(14, 5));
                assert_eq!(point, vec![qr(8, 5), qr(6, 5)]);
            }
            LpOutcome::Unbounded => panic!(),
        }
        assert_eq!(maximize(&a[..1], &b[..1], &qs(&[1, 0])).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn box_of_a_simplex() {
        // The triangle x, y >= -1, x + y <= 1.
        let a = vec![qs(&[-1, 0]), qs(&[0, -1]), qs(&[1, 1])];
        let b = qs(&[1, 1, 1]);
        assert_eq!(bounding_box(&a, &b, 2).unwrap(), vec![(q(-1), q(2)), (q(-1), q(2))]);
    }
}
