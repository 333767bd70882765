use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::count::count;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{q, Q};

/// Polynomial on each residue class of `t` modulo `period`; coefficients are
/// listed from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    pub period: u32,
    #[serde(with = "constituents_serde")]
    pub constituents: Vec<Vec<Q>>,
}

mod constituents_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{pair_vec, Q};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Poly(#[serde(with = "pair_vec")] Vec<Q>);

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let polys: Vec<Poly> = v.iter().map(|p| Poly(p.clone())).collect();
        polys.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        Ok(Vec::<Poly>::deserialize(d)?.into_iter().map(|p| p.0).collect())
    }
}

pub fn eval_poly(coeffs: &[Q], t: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
}

impl QuasiPolynomial {
    pub fn constituent(&self, t: u64) -> &[Q] {
        &self.constituents[(t % self.period as u64) as usize]
    }

    pub fn eval(&self, t: u64) -> Q {
        eval_poly(self.constituent(t), &q(t as i64))
    }

    pub fn degree(&self) -> usize {
        self.constituents.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Coefficients of `t^k` shared by every constituent, from the top down,
    /// stopping at the first that differs.
    pub fn common_top(&self) -> Vec<Q> {
        let d = self.degree();
        let mut out = Vec::new();
        for k in (0..=d).rev() {
            let c = &self.constituents[0][k];
            if self.constituents.iter().all(|p| &p[k] == c) {
                out.push(c.clone());
            } else {
                break;
            }
        }
        out
    }

    pub fn leading_coefficients(&self) -> Vec<Q> {
        self.constituents.iter().map(|p| p.last().cloned().unwrap_or_default()).collect()
    }

    /// Shrinks a period-4 quasi-polynomial to the least of 1, 2, 4 that fits.
    pub fn minimized(mut self) -> Self {
        for p in [1u32, 2] {
            if self.period.is_multiple_of(p)
                && (0..self.period as usize).all(|r| self.constituents[r] == self.constituents[r % p as usize])
            {
                self.constituents.truncate(p as usize);
                self.period = p;
                break;
            }
        }
        self
    }
}

/// Monomial coefficients of the polynomial through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form.
    let mut poly = vec![Q::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (t - xs[i]) + dd[i]
        let mut next = vec![Q::zero(); n];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Ehrhart quasi-polynomial of `P_G` with period dividing 4.
///
/// Each constituent is interpolated from `m + 1` counts on its residue class
/// and checked against one further count.
pub fn quasi_polynomial(g: &Graph) -> Result<QuasiPolynomial> {
    g.ensure_13()?;
    let m = g.edge_count() as u64;
    let ts: Vec<u64> = (0..4u64).flat_map(|r| (0..=m + 1).map(move |j| r + 4 * j)).collect();
    let counts: Vec<u128> = ts
        .par_iter()
        .map(|&t| count(g, t).map(|c| c.count))
        .collect::<Result<_>>()?;
    let per = (m + 2) as usize;
    let mut constituents = Vec::with_capacity(4);
    for r in 0..4usize {
        let block = &ts[r * per..(r + 1) * per];
        let vals = &counts[r * per..(r + 1) * per];
        let xs: Vec<Q> = block[..per - 1].iter().map(|&t| q(t as i64)).collect();
        let ys: Vec<Q> = vals[..per - 1].iter().map(|&c| Q::from_integer(c.into())).collect();
        let poly = interpolate(&xs, &ys);
        let t_check = block[per - 1];
        let predicted = eval_poly(&poly, &q(t_check as i64));
        let counted = Q::from_integer(vals[per - 1].into());
        if predicted != counted {
            return Err(Error::Interpolation {
                residue: r as u32,
                t: t_check,
                predicted: predicted.to_string(),
                counted: counted.to_string(),
            });
        }
        constituents.push(poly);
    }
    Ok(QuasiPolynomial {
        period: 4,
        constituents,
    }
    .minimized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::rational::qr;

    #[test]
    fn interpolation_recovers_cubic() {
        let f = |t: i64| q(2 * t * t * t - t + 5) / q(3);
        let xs: Vec<Q> = [1, 5, 9, 13].iter().map(|&t| q(t)).collect();
        let ys: Vec<Q> = [1, 5, 9, 13].iter().map(|&t| f(t)).collect();
        assert_eq!(interpolate(&xs, &ys), vec![qr(5, 3), qr(-1, 3), q(0), qr(2, 3)]);
    }

    #[test]
    fn claw_quasi_polynomial() {
        let qp = quasi_polynomial(&claw()).unwrap();
        assert_eq!(qp.period, 2);
        assert_eq!(qp.constituents[0], vec![q(1), qr(5, 6), qr(1, 4), qr(1, 24)]);
        assert_eq!(qp.constituents[1], vec![qr(1, 4), qr(11, 24), qr(1, 4), qr(1, 24)]);
        assert_eq!(qp.common_top(), vec![qr(1, 24), qr(1, 4)]);
        assert_eq!(qp.eval(2), q(4));
    }

    #[test]
    fn json_shape() {
        let qp = QuasiPolynomial {
            period: 1,
            constituents: vec![vec![q(1), qr(1, 2)]],
        };
        let text = serde_json::to_string(&qp).unwrap();
        assert_eq!(text, r#"{"period":1,"constituents":[[[1,1],[1,2]]]}"#);
        assert_eq!(serde_json::from_str::<QuasiPolynomial>(&text).unwrap(), qp);
    }

    #[test]
    fn theta_equals_dumbbell() {
        assert_eq!(quasi_polynomial(&theta()).unwrap(), quasi_polynomial(&dumbbell()).unwrap());
    }
}
