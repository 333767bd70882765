//! Square integer matrices with overflow-checked arithmetic.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Row-major square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

fn overflow() -> Error {
    Error::Overflow("integer matrix arithmetic")
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        IntMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: r.len(),
            });
        }
        Ok(IntMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn set_row(&mut self, i: usize, row: Vec<i64>) {
        assert_eq!(row.len(), self.dim());
        self.rows[i] = row;
    }

    /// `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let n = self.dim();
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let x = self.rows[i][k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = x.checked_mul(other.rows[k][j]).ok_or_else(overflow)?;
                    rows[i][j] = rows[i][j].checked_add(p).ok_or_else(overflow)?;
                }
            }
        }
        Ok(IntMatrix { rows })
    }

    /// `selfᵀ · v`: pulls a linear functional back through the map.
    pub fn transpose_apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        let n = self.dim();
        let mut out = vec![0i64; n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..n {
                let p = vi.checked_mul(self.rows[i][j]).ok_or_else(overflow)?;
                out[j] = out[j].checked_add(p).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }

    pub fn apply_i64(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter().zip(v).try_fold(0i64, |acc, (&a, &x)| {
                    a.checked_mul(x).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
                })
            })
            .collect()
    }

    pub fn apply_q(&self, v: &[Q]) -> Vec<Q> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(&a, _)| a != 0)
                    .map(|(&a, x)| x * Q::from_integer(a.into()))
                    .sum()
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64> {
        let n = self.dim();
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return Ok(0);
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                        .ok_or_else(overflow)?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| overflow())
    }
}

/// Solves the square system `A x = b` over the rationals; `None` if `A` is
/// singular.
pub fn solve_q(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
            let d = &f * &b[k];
            b[i] -= d;
        }
    }
    let mut x = vec![Q::zero(); n];
    for k in (0..n).rev() {
        let s: Q = (k + 1..n).map(|j| &a[k][j] * &x[j]).sum();
        x[k] = (&b[k] - s) / &a[k][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), 1);
        let m = IntMatrix::from_rows(vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), 1);
        let p = IntMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(p.det().unwrap(), -1);
        let s = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        assert_eq!(s.det().unwrap(), 0);
        let t = IntMatrix::from_rows(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap();
        assert_eq!(t.det().unwrap(), 4);
    }

    #[test]
    fn products_and_pullbacks() {
        let a = IntMatrix::from_rows(vec![vec![1, 0], vec![1, 1]]).unwrap();
        let b = IntMatrix::from_rows(vec![vec![1, 2], vec![0, 1]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.rows(), &[vec![1, 2], vec![1, 3]]);
        // (ab)ᵀ n · w == n · (ab w)
        let n = [3, -1];
        let w = [5, 7];
        let lhs: i64 = ab.transpose_apply(&n).unwrap().iter().zip(&w).map(|(x, y)| x * y).sum();
        let rhs: i64 = ab.apply_i64(&w).unwrap().iter().zip(&n).map(|(x, y)| x * y).sum();
        assert_eq!(lhs, rhs);
        assert!(IntMatrix::from_rows(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn rational_solve() {
        use crate::rational::{q, qr};
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(solve_q(a, vec![q(1), q(0)]).unwrap(), vec![qr(3, 5), qr(-1, 5)]);
        assert!(solve_q(vec![vec![q(1), q(2)], vec![q(2), q(4)]], vec![q(0), q(0)]).is_none());
    }
}
