use serde::Serialize;

use super::count::count_backtracking;
use super::quasi::QuasiPolynomial;
use super::system::inequality_system;
use super::verlinde::cubic_volume;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeReport {
    pub vertices: usize,
    #[serde(serialize_with = "crate::rational::serialize_pair")]
    pub expected: Q,
    #[serde(serialize_with = "crate::rational::pair_vec::serialize")]
    pub leading: Vec<Q>,
    pub pass: bool,
}

/// Compares every leading coefficient of `qp` with `|B_n| / (2 · n!)`.
pub fn volume_checks(g: &Graph, qp: &QuasiPolynomial) -> Result<VolumeReport> {
    g.ensure_13()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertices().any(|v| g.degree(v) != 3) {
        return Err(Error::Validation("volume formula needs a cubic graph".into()));
    }
    let n = g.vertex_count();
    let expected = cubic_volume(n as u32);
    let leading = qp.leading_coefficients();
    let pass = qp.degree() == g.edge_count() && leading.iter().all(|c| *c == expected);
    Ok(VolumeReport {
        vertices: n,
        expected,
        leading,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiReflexiveSample {
    #[serde(serialize_with = "crate::rational::serialize_pair")]
    pub s: Q,
    pub at_s: u128,
    pub at_floor: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiReflexiveReport {
    pub samples: Vec<SemiReflexiveSample>,
    pub violations: usize,
}

/// Checks `L(s) = L(⌊s⌋)` at each sample dilation.
pub fn semi_reflexive_check(g: &Graph, samples: &[Q]) -> Result<SemiReflexiveReport> {
    let sys = inequality_system(g)?;
    let mut out = Vec::with_capacity(samples.len());
    for s in samples {
        let at_s = count_backtracking(&sys, s)?.count;
        let at_floor = count_backtracking(&sys, &s.floor())?.count;
        out.push(SemiReflexiveSample {
            s: s.clone(),
            at_s,
            at_floor,
        });
    }
    let violations = out.iter().filter(|x| x.at_s != x.at_floor).count();
    Ok(SemiReflexiveReport {
        samples: out,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::quasi::quasi_polynomial;
    use crate::graph::named::*;
    use crate::rational::{q, qr};

    #[test]
    fn theta_volume() {
        let r = volume_checks(&theta(), &quasi_polynomial(&theta()).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected, qr(1, 24));
        assert!(volume_checks(&claw(), &quasi_polynomial(&claw()).unwrap()).is_err());
    }

    #[test]
    fn claw_semi_reflexive() {
        let r = semi_reflexive_check(&claw(), &[qr(5, 4), qr(11, 4), q(3)]).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!((r.samples[0].at_s, r.samples[1].at_s), (1, 4));
    }
}
