//! Dissection of `P_G` into half-open polyhedral pieces, each carried onto
//! `P_{G'}` by one unimodular map, following a sequence of weighted NNIs.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ehrhart::{inequality_system, lattice_points, InequalitySystem};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::IntMatrix;
use crate::lp::{maximize, LpOutcome};
use crate::nni::{apply_nni, MoveSequence};
use crate::rational::{q, Q};
use crate::wnni::{case_matrix, comparison_normals, replay_weighted, resolve_site, CaseTag, UnimodularMap, Weighting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sense {
    /// `normal · w ≥ 0`
    WeakGe,
    /// `normal · w < 0`
    StrictLt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub normals: Vec<Vec<i64>>,
    pub senses: Vec<Sense>,
    #[serde(flatten)]
    pub map: UnimodularMap,
    /// Case taken at each move.
    pub cases: Vec<CaseTag>,
}

fn dot_i(n: &[i64], w: &[i64]) -> i64 {
    n.iter().zip(w).map(|(a, b)| a * b).sum()
}

fn dot_q(n: &[i64], w: &[Q]) -> Q {
    n.iter()
        .zip(w)
        .filter(|(&a, _)| a != 0)
        .map(|(&a, x)| x * q(a))
        .sum()
}

impl Piece {
    pub fn contains(&self, w: &[Q]) -> bool {
        self.normals.iter().zip(&self.senses).all(|(n, s)| {
            let v = dot_q(n, w);
            match s {
                Sense::WeakGe => !v.is_negative(),
                Sense::StrictLt => v.is_negative(),
            }
        })
    }

    fn contains_int(&self, w: &[i64]) -> bool {
        self.normals.iter().zip(&self.senses).all(|(n, s)| {
            let v = dot_i(n, w);
            match s {
                Sense::WeakGe => v >= 0,
                Sense::StrictLt => v < 0,
            }
        })
    }

    fn image_int(&self, w: &[i64]) -> Result<Vec<i64>> {
        let mut out = self.map.matrix.apply_i64(w)?;
        for (x, b) in out.iter_mut().zip(&self.map.offset) {
            *x += b;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub source: Graph,
    pub target: Graph,
    pub pieces: Vec<Piece>,
    pub move_trace: MoveSequence,
}

/// True when the piece meets `P_G` (at `t = 1`).
fn meets_polytope(sys: &InequalitySystem, normals: &[Vec<i64>], senses: &[Sense]) -> Result<bool> {
    // Variables (w, s): maximise s with strict rows n·w + s ≤ 0 and s ≤ 1.
    let m = sys.dim;
    let mut a: Vec<Vec<Q>> = Vec::new();
    let mut b: Vec<Q> = Vec::new();
    for (row, rhs) in sys.rows.iter().zip(sys.rhs_at(&q(1))) {
        let mut r: Vec<Q> = row.coeffs.iter().map(|&c| q(c)).collect();
        r.push(Q::zero());
        a.push(r);
        b.push(rhs);
    }
    for (n, s) in normals.iter().zip(senses) {
        let mut r: Vec<Q> = match s {
            Sense::WeakGe => n.iter().map(|&c| q(-c)).collect(),
            Sense::StrictLt => n.iter().map(|&c| q(c)).collect(),
        };
        r.push(if *s == Sense::StrictLt { q(1) } else { Q::zero() });
        a.push(r);
        b.push(Q::zero());
    }
    let mut cap = vec![Q::zero(); m + 1];
    cap[m] = q(1);
    a.push(cap.clone());
    b.push(q(1));
    match maximize(&a, &b, &cap)? {
        LpOutcome::Optimal { value, .. } => Ok(value.is_positive()),
        LpOutcome::Unbounded => Err(Error::Unbounded),
    }
}

/// Refines `P_G` along the pulled-back comparison hyperplanes of every move
/// of `seq`, composing case matrices, then applies the final relabelling.
pub fn build_decomposition(g: &Graph, seq: &MoveSequence) -> Result<Decomposition> {
    let sys = inequality_system(g)?;
    let m = sys.dim;
    let mut pieces = vec![Piece {
        normals: Vec::new(),
        senses: Vec::new(),
        map: UnimodularMap::identity(m),
        cases: Vec::new(),
    }];
    let mut cur = g.clone();
    for trail in &seq.moves {
        let site = resolve_site(&cur, trail)?;
        let normals = comparison_normals(&site, m);
        let mut next = Vec::new();
        for p in &pieces {
            let pulled = [
                p.map.matrix.transpose_apply(&normals[0])?,
                p.map.matrix.transpose_apply(&normals[1])?,
            ];
            for tag in CaseTag::ALL {
                let (s1, s2) = tag.sides();
                let mut child = p.clone();
                let mut feasible = true;
                for (n, side) in pulled.iter().zip([s1, s2]) {
                    let zero = n.iter().all(|&x| x == 0);
                    match (zero, side) {
                        (true, true) => {}
                        (true, false) => feasible = false,
                        (false, _) => {
                            let sense = if side { Sense::WeakGe } else { Sense::StrictLt };
                            if !child.normals.iter().zip(&child.senses).any(|(x, s)| x == n && *s == sense) {
                                child.normals.push(n.clone());
                                child.senses.push(sense);
                            }
                        }
                    }
                }
                if !feasible || !meets_polytope(&sys, &child.normals, &child.senses)? {
                    continue;
                }
                child.map.matrix = case_matrix(&site, tag, m).matrix.mul(&p.map.matrix)?;
                child.cases.push(tag);
                next.push(child);
            }
        }
        pieces = next;
        cur = apply_nni(&cur, trail)?;
    }
    // w'_{σ(e)} = w_e
    let mut perm = vec![vec![0i64; m]; m];
    for e in g.edge_ids() {
        let to = seq.map_edge(e);
        perm[to.0 as usize - 1][e.0 as usize - 1] = 1;
    }
    let perm = IntMatrix::from_rows(perm)?;
    for p in &mut pieces {
        p.map.matrix = perm.mul(&p.map.matrix)?;
    }
    let target = cur.renamed(&seq.vertex_map, &seq.edge_map)?;
    Ok(Decomposition {
        source: g.clone(),
        target,
        pieces,
        move_trace: seq.clone(),
    })
}

/// Replays the weighted NNI sequence and relabels onto the target's edges.
fn replay_relabelled(d: &Decomposition, w: &Weighting) -> Result<Weighting> {
    let (_, out) = replay_weighted(&d.source, w, &d.move_trace.moves)?;
    let mut renamed = out.clone();
    for e in d.source.edge_ids() {
        renamed.set(d.move_trace.map_edge(e), out.get(e).clone());
    }
    Ok(renamed)
}

/// Image of `w` under the map of the unique piece containing it. `w` must
/// lie in some dilate `tP_G`.
pub fn evaluate_piecewise(d: &Decomposition, w: &Weighting) -> Result<Weighting> {
    let sys = inequality_system(&d.source)?;
    if w.len() != sys.dim {
        return Err(Error::Dimension {
            expected: sys.dim,
            got: w.len(),
        });
    }
    // tP_G is a cone truncated by the perimeter rows.
    let in_cone = sys.rows.iter().filter(|r| r.alpha == 0).all(|r| !dot_q(&r.coeffs, &w.0).is_positive());
    if !in_cone {
        return Err(Error::OutsidePolytope);
    }
    let hits: Vec<&Piece> = d.pieces.iter().filter(|p| p.contains(&w.0)).collect();
    match hits[..] {
        [p] => Ok(Weighting(p.map.apply(&w.0))),
        [] => Err(Error::OutsidePolytope),
        _ => Err(Error::Invalid(format!("{} pieces claim the point", hits.len()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilationCheck {
    pub t: u64,
    pub source_points: usize,
    pub target_points: usize,
    pub per_piece: Vec<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pieces: usize,
    pub determinants: Vec<i64>,
    pub dilations: Vec<DilationCheck>,
    pub pass: bool,
}

fn check_dilation(d: &Decomposition, src: &InequalitySystem, tgt: &InequalitySystem, t: u64) -> Result<DilationCheck> {
    let tq = q(t as i64);
    let points = lattice_points(&src.matrix(), &src.rhs_at(&tq), src.dim)?;
    let target: BTreeSet<Vec<i64>> = lattice_points(&tgt.matrix(), &tgt.rhs_at(&tq), tgt.dim)?
        .into_iter()
        .collect();
    let assigned: Vec<std::result::Result<(usize, Vec<i64>), String>> = points
        .par_iter()
        .map(|w| {
            let hits: Vec<usize> = (0..d.pieces.len()).filter(|&i| d.pieces[i].contains_int(w)).collect();
            let [i] = hits[..] else {
                return Err(format!("{w:?} lies in {} pieces", hits.len()));
            };
            let image = d.pieces[i].image_int(w).map_err(|e| e.to_string())?;
            let wq = Weighting::from_ints(w);
            let replayed = replay_relabelled(d, &wq).map_err(|e| e.to_string())?;
            if Weighting::from_ints(&image) != replayed {
                return Err(format!("piece {i} sends {w:?} to {image:?}, replay disagrees"));
            }
            Ok((i, image))
        })
        .collect();
    let mut per_piece = vec![0usize; d.pieces.len()];
    let mut images = BTreeSet::new();
    let mut failure = None;
    for r in assigned {
        match r {
            Ok((i, image)) => {
                per_piece[i] += 1;
                if !target.contains(&image) {
                    failure.get_or_insert(format!("image {image:?} is outside the target"));
                }
                if !images.insert(image.clone()) {
                    failure.get_or_insert(format!("image {image:?} is hit twice"));
                }
            }
            Err(msg) => {
                failure.get_or_insert(msg);
            }
        }
    }
    if failure.is_none() && images.len() != target.len() {
        failure = Some(format!("{} of {} target points are covered", images.len(), target.len()));
    }
    Ok(DilationCheck {
        t,
        source_points: points.len(),
        target_points: target.len(),
        per_piece,
        pass: failure.is_none(),
        failure,
    })
}

/// Checks, at each dilation, that the pieces partition the lattice points of
/// `tP_G`, that their images are exactly those of `tP_{G'}`, and that each
/// image agrees with the weighted NNI replay; also that every map is
/// unimodular.
pub fn verify_decomposition(d: &Decomposition, dilations: &[u64]) -> Result<VerifyReport> {
    let src = inequality_system(&d.source)?;
    let tgt = inequality_system(&d.target)?;
    let determinants = d.pieces.iter().map(|p| p.map.det()).collect::<Result<Vec<_>>>()?;
    let dilations = dilations
        .iter()
        .map(|&t| check_dilation(d, &src, &tgt, t))
        .collect::<Result<Vec<_>>>()?;
    let pass = determinants.iter().all(|x| x.abs() == 1) && dilations.iter().all(|c| c.pass);
    Ok(VerifyReport {
        pieces: d.pieces.len(),
        determinants,
        dilations,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::nni::{graph_sequence, Trail};
    use crate::rational::qr;

    fn theta_move() -> MoveSequence {
        MoveSequence::from_moves(vec![Trail::new(1, 2, 3, 1, 2)])
    }

    #[test]
    fn theta_to_dumbbell_has_two_pieces() {
        let d = build_decomposition(&theta(), &theta_move()).unwrap();
        assert_eq!(d.target, dumbbell());
        assert_eq!(d.pieces.len(), 2);
        let rows: Vec<&[i64]> = d.pieces.iter().map(|p| p.map.matrix.row(2)).collect();
        // w1 >= w2 first, then w1 < w2.
        assert_eq!(rows, vec![&[-1, 1, 1][..], &[1, -1, 1][..]]);
        assert_eq!(d.pieces[0].normals, vec![vec![2, -2, 0]]);
        assert_eq!(d.pieces[0].senses, vec![Sense::WeakGe]);
        assert_eq!(d.pieces[1].senses, vec![Sense::StrictLt]);
    }

    #[test]
    fn piecewise_evaluation() {
        let d = build_decomposition(&theta(), &theta_move()).unwrap();
        let w = Weighting(vec![qr(1, 2), q(0), qr(1, 2)]);
        assert_eq!(evaluate_piecewise(&d, &w).unwrap(), Weighting(vec![qr(1, 2), q(0), q(0)]));
        let tie = Weighting(vec![qr(1, 4), qr(1, 4), qr(1, 2)]);
        assert_eq!(evaluate_piecewise(&d, &tie).unwrap(), tie);
        assert_eq!(evaluate_piecewise(&d, &Weighting::zeros(3)).unwrap(), Weighting::zeros(3));
        assert_eq!(
            evaluate_piecewise(&d, &Weighting::from_ints(&[1, 0, 0])),
            Err(Error::OutsidePolytope)
        );
    }

    #[test]
    fn identity_decomposition() {
        let d = build_decomposition(&k4(), &MoveSequence::default()).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(verify_decomposition(&d, &[0, 1, 2]).unwrap().pass);
    }

    #[test]
    fn there_and_back() {
        let w = Trail::new(1, 2, 3, 1, 2);
        let seq = MoveSequence::from_moves(vec![w, w.flipped()]);
        let d = build_decomposition(&theta(), &seq).unwrap();
        assert_eq!(d.target, theta());
        assert!(d.pieces.len() <= 4);
        let r = verify_decomposition(&d, &[0, 1, 2, 3, 4]).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn theta_tiles_dumbbell() {
        let d = build_decomposition(&theta(), &theta_move()).unwrap();
        let r = verify_decomposition(&d, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.determinants, vec![1, 1]);
    }

    #[test]
    fn k4_tiles_t4() {
        let seq = graph_sequence(&k4(), &t4(), false).unwrap();
        let d = build_decomposition(&k4(), &seq).unwrap();
        assert_eq!(d.target, t4());
        let r = verify_decomposition(&d, &[0, 1, 2, 3]).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn broken_map_is_caught() {
        let mut d = build_decomposition(&theta(), &theta_move()).unwrap();
        d.pieces[0].map = UnimodularMap::identity(3);
        assert!(!verify_decomposition(&d, &[2]).unwrap().pass);
    }
}
