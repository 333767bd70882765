//! Fixtures and weighted-NNI property checks shared by the property tests
//! and the acceptance run.

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use trivalent::ehrhart::{inequality_system, lattice_points, InequalitySystem};
use trivalent::graph::{connected_13_graphs, Graph};
use trivalent::rational::{q, qr, Q};
use trivalent::wnni::{
    all_sites, apply_weighted_nni, case_matrix, case_of, comparison_normals, CaseTag, NniSite, Weighting,
};

pub struct Fixture {
    pub graph: Graph,
    pub sys: InequalitySystem,
    pub sites: Vec<NniSite>,
    /// Lattice points of `GRID · P_G`.
    pub inner: Vec<Vec<i64>>,
}

pub const GRID: i64 = 8;

/// Every connected {1,3}-graph with at most six edges that admits a move.
pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        connected_13_graphs(6)
            .into_iter()
            .filter_map(|c| {
                let sites = all_sites(&c.graph);
                if sites.is_empty() {
                    return None;
                }
                let sys = inequality_system(&c.graph).unwrap();
                let inner = lattice_points(&sys.matrix(), &sys.rhs_at(&q(GRID)), sys.dim).unwrap();
                Some(Fixture {
                    graph: c.graph,
                    sys,
                    sites,
                    inner,
                })
            })
            .collect()
    })
}

pub fn rational() -> impl Strategy<Value = Q> {
    (0i64..=60, 1i64..=12).prop_map(|(n, d)| qr(n, d))
}

pub fn fixture_and_site() -> impl Strategy<Value = (usize, usize)> {
    (0..fixtures().len()).prop_flat_map(|i| (Just(i), 0..fixtures()[i].sites.len()))
}

pub fn seed() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), 7)
}

/// Rational `t` in `[0, 5]`.
pub fn dilation() -> impl Strategy<Value = Q> {
    (0i64..=60, 1i64..=12).prop_map(|(n, d)| qr(n, d)).prop_filter("t <= 5", |t| *t <= q(5))
}

fn site(fi: usize, si: usize) -> (&'static Fixture, NniSite) {
    let f = &fixtures()[fi];
    (f, f.sites[si])
}

pub fn involution(fi: usize, si: usize, seed: &[Q]) -> Result<(), TestCaseError> {
    let (f, site) = site(fi, si);
    let w = Weighting(seed[..f.sys.dim].to_vec());
    let (h, w2) = apply_weighted_nni(&f.graph, &w, &site).unwrap();
    let (g2, w3) = apply_weighted_nni(&h, &w2, &site.flipped()).unwrap();
    prop_assert_eq!(&g2, &f.graph);
    prop_assert_eq!(w3, w);
    Ok(())
}

/// With `inside`, a lattice point of `GRID · P_G` is scaled into `tP_G`.
pub fn membership(fi: usize, si: usize, seed: &[Q], pick: usize, t: &Q, inside: bool) -> Result<(), TestCaseError> {
    let (f, site) = site(fi, si);
    let m = f.sys.dim;
    let w = if inside {
        let p = &f.inner[pick % f.inner.len()];
        Weighting(p.iter().map(|&x| q(x) * t / q(GRID)).collect())
    } else {
        Weighting(seed[..m].iter().map(|x| x / q(6)).collect())
    };
    let (h, w2) = apply_weighted_nni(&f.graph, &w, &site).unwrap();
    let before = f.sys.contains(&w, t).unwrap();
    prop_assert_eq!(before, inequality_system(&h).unwrap().contains(&w2, t).unwrap());
    prop_assert!(before || !inside);
    Ok(())
}

pub fn piecewise_agreement(fi: usize, si: usize, seed: &[Q]) -> Result<(), TestCaseError> {
    let (f, site) = site(fi, si);
    let m = f.sys.dim;
    let w = Weighting(seed[..m].to_vec());
    let (_, w2) = apply_weighted_nni(&f.graph, &w, &site).unwrap();
    let map = case_matrix(&site, case_of(&w, &site), m);
    prop_assert_eq!(Weighting(map.apply(&w.0)), w2);
    prop_assert_eq!(map.det().unwrap(), 1);
    Ok(())
}

fn in_closure(w: &Weighting, site: &NniSite, tag: CaseTag) -> bool {
    let n = comparison_normals(site, w.len());
    let val = |k: usize| -> Q { n[k].iter().zip(&w.0).map(|(&c, x)| x * q(c)).sum() };
    let (s1, s2) = tag.sides();
    let ok = |v: Q, side: bool| if side { v >= q(0) } else { v <= q(0) };
    ok(val(0), s1) && ok(val(1), s2)
}

/// Projects the seed onto one comparison hyperplane; every case whose
/// closure holds the point must give the same image.
pub fn continuity(fi: usize, si: usize, seed: &[Q], which: usize) -> Result<(), TestCaseError> {
    let (f, site) = site(fi, si);
    let m = f.sys.dim;
    let mut w = Weighting(seed[..m].to_vec());
    let n = &comparison_normals(&site, m)[which];
    let Some(j) = n.iter().position(|&c| c != 0) else {
        return Ok(());
    };
    let rest: Q = n
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(i, &c)| &w.0[i] * q(c))
        .sum();
    w.0[j] = -rest / q(n[j]);
    let (_, expected) = apply_weighted_nni(&f.graph, &w, &site).unwrap();
    let mut touching = 0;
    for tag in CaseTag::ALL {
        if in_closure(&w, &site, tag) {
            touching += 1;
            prop_assert_eq!(&Weighting(case_matrix(&site, tag, m).apply(&w.0)), &expected);
        }
    }
    prop_assert!(touching >= 2);
    Ok(())
}
