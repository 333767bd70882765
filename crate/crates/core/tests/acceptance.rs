//! Runs each acceptance criterion and prints one PASS/FAIL line for it.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;
use trivalent::ehrhart::{
    count, count_backtracking, count_tree_dp, inequality_system, quasi_polynomial, semi_reflexive_check,
    verlinde_count, volume_checks, zagier_polynomial, QuasiPolynomial,
};
use trivalent::graph::named::{claw, dumbbell, k4, t4, theta};
use trivalent::graph::{connected_13_graphs, CatalogEntry};
use trivalent::nni::{graph_sequence, pivots_respect_trees, tree_sequence, MoveSequence, Trail};
use trivalent::rational::{q, qr, Q};
use trivalent::reflexivity::{h_star, reflexivity_check};
use trivalent::scissors::{build_decomposition, verify_decomposition};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog() -> &'static [CatalogEntry] {
    static C: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    C.get_or_init(|| connected_13_graphs(7))
}

/// Quasi-polynomials of every catalog graph with at most seven edges.
fn catalog_qps() -> &'static [QuasiPolynomial] {
    static Q7: OnceLock<Vec<QuasiPolynomial>> = OnceLock::new();
    Q7.get_or_init(|| {
        catalog()
            .par_iter()
            .map(|c| quasi_polynomial(&c.graph).expect("quasi-polynomial"))
            .collect()
    })
}

fn fracs(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(n, d)| qr(n, d)).collect()
}

/// Table rows as (even, odd) constituents, constant term first.
fn table_row(inner: usize) -> (Vec<Q>, Vec<Q>) {
    let (even, odd): (&[(i64, i64)], &[(i64, i64)]) = match inner {
        1 => (
            &[(1, 1), (5, 6), (1, 4), (1, 24)],
            &[(1, 4), (11, 24), (1, 4), (1, 24)],
        ),
        2 => (
            &[(1, 1), (11, 10), (7, 12), (5, 24), (1, 24), (1, 240)],
            &[(1, 8), (79, 240), (1, 3), (1, 6), (1, 24), (1, 240)],
        ),
        3 => (
            &[(1, 1), (93, 70), (173, 180), (179, 360), (25, 144), (59, 1440), (17, 2880), (17, 40320)],
            &[(1, 16), (791, 3360), (893, 2880), (1439, 5760), (35, 288), (103, 2880), (17, 2880), (17, 40320)],
        ),
        4 => (
            &[
                (1, 1),
                (193, 126),
                (1723, 1260),
                (20413, 22680),
                (103, 240),
                (653, 4320),
                (37, 960),
                (829, 120960),
                (31, 40320),
                (31, 725760),
            ],
            &[
                (1, 32),
                (379, 2880),
                (9923, 40320),
                (39205, 145152),
                (123, 640),
                (3181, 34560),
                (19, 640),
                (43, 6912),
                (31, 40320),
                (31, 725760),
            ],
        ),
        _ => unreachable!(),
    };
    (fracs(even), fracs(odd))
}

fn c1_tree_table() -> Outcome {
    let trees: Vec<_> = connected_13_graphs(9).into_iter().filter(|c| c.graph.is_tree()).collect();
    let mut by_inner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for c in &trees {
        let qp = quasi_polynomial(&c.graph).map_err(|e| e.to_string())?;
        let (even, odd) = table_row(c.cubic_vertices);
        ensure(qp.period == 2 && qp.degree() == c.edges, || {
            format!("tree with {} inner vertices: period {}", c.cubic_vertices, qp.period)
        })?;
        for (parity, printed) in [("even", &even), ("odd", &odd)] {
            let ours = &qp.constituents[(parity == "odd") as usize];
            for (k, (a, b)) in ours.iter().zip(printed.iter()).enumerate() {
                if a != b {
                    mismatches.push(format!(
                        "row {} {parity} t^{k}: computed {a}, table {b}",
                        c.cubic_vertices
                    ));
                }
            }
        }
        *by_inner.entry(c.cubic_vertices).or_default() += 1;
    }
    ensure(by_inner == BTreeMap::from([(1, 1), (2, 1), (3, 1), (4, 2)]), || {
        format!("tree classes by inner vertices: {by_inner:?}")
    })?;
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok("5 trees, 4 rows, period 2, all coefficients equal".into())
}

fn c2_invariance() -> Outcome {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, c) in catalog().iter().enumerate() {
        groups.entry((c.vertices, c.edges)).or_default().push(i);
    }
    let qps = catalog_qps();
    for ((n, m), idx) in &groups {
        let first = &qps[idx[0]];
        ensure(idx.iter().all(|&i| qps[i] == *first), || {
            format!("quasi-polynomials differ within (n, m) = ({n}, {m})")
        })?;
    }
    Ok(format!("{} graphs in {} (n, m) classes", catalog().len(), groups.len()))
}

fn c3_verlinde() -> Outcome {
    let mut checked = 0;
    for (i, c) in catalog().iter().enumerate() {
        if c.cubic_vertices != c.vertices || ![2, 4].contains(&c.vertices) {
            continue;
        }
        let n = c.vertices as u32;
        let z = zagier_polynomial(n).map_err(|e| e.to_string())?;
        for t in [1u64, 3, 5] {
            let v = verlinde_count(n, t).map_err(|e| e.to_string())?;
            let l = count(&c.graph, t).map_err(|e| e.to_string())?.count;
            let zt = trivalent::ehrhart::eval_poly(&z, &q(t as i64));
            ensure(v == l && zt == Q::from_integer(l.into()), || {
                format!("n={n} t={t}: verlinde {v}, zagier {zt}, count {l}")
            })?;
            checked += 1;
        }
        ensure(catalog_qps()[i].constituent(1) == z.as_slice(), || {
            format!("odd constituent differs from the Zagier polynomial for n={n}")
        })?;
    }
    ensure(verlinde_count(2, 1) == Ok(1) && verlinde_count(2, 3) == Ok(5), || "n=2 values".into())?;
    Ok(format!("{checked} (graph, t) pairs; odd constituents equal the Zagier polynomial"))
}

fn c4_volume() -> Outcome {
    let mut seen = Vec::new();
    for (i, c) in catalog().iter().enumerate() {
        if c.cubic_vertices != c.vertices || ![2, 4].contains(&c.vertices) {
            continue;
        }
        let r = volume_checks(&c.graph, &catalog_qps()[i]).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{r:?}"))?;
        seen.push(r.expected.to_string());
    }
    seen.dedup();
    ensure(seen == ["1/24", "1/1440"], || format!("volumes {seen:?}"))?;
    Ok("1/24 (n=2), 1/1440 (n=4)".into())
}

fn c5_scissors() -> Outcome {
    let seq = MoveSequence::from_moves(vec![Trail::new(1, 2, 3, 1, 2)]);
    let d = build_decomposition(&theta(), &seq).map_err(|e| e.to_string())?;
    let printed_ge = vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, 1, 1]];
    let printed_lt = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, -1, 1]];
    let mats: Vec<_> = d.pieces.iter().map(|p| p.map.matrix.rows().to_vec()).collect();
    ensure(mats == vec![printed_ge, printed_lt], || format!("theta pieces {mats:?}"))?;
    let r = verify_decomposition(&d, &(0..=6).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("theta: {r:?}"))?;
    let seq = graph_sequence(&k4(), &t4(), false).map_err(|e| e.to_string())?;
    let d = build_decomposition(&k4(), &seq).map_err(|e| e.to_string())?;
    let r2 = verify_decomposition(&d, &(0..=4).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    ensure(r2.pass && d.target == t4(), || format!("K4: {r2:?}"))?;
    Ok(format!(
        "theta: 2 pieces, t=0..6; K4: {} moves, {} pieces, t=0..4",
        seq.len(),
        r2.pieces
    ))
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn fail<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{name}: {e}")
}

fn c6_weighted_properties() -> Outcome {
    use common::*;
    runner()
        .run(&(fixture_and_site(), seed()), |((fi, si), s)| involution(fi, si, &s))
        .map_err(|e| fail("involution", e))?;
    runner()
        .run(
            &(fixture_and_site(), seed(), any::<usize>(), dilation(), any::<bool>()),
            |((fi, si), s, pick, t, inside)| membership(fi, si, &s, pick, &t, inside),
        )
        .map_err(|e| fail("membership", e))?;
    runner()
        .run(&(fixture_and_site(), seed()), |((fi, si), s)| piecewise_agreement(fi, si, &s))
        .map_err(|e| fail("max-formula", e))?;
    runner()
        .run(&(fixture_and_site(), seed(), 0usize..2), |((fi, si), s, which)| {
            continuity(fi, si, &s, which)
        })
        .map_err(|e| fail("continuity", e))?;
    Ok(format!("4 properties x 1000 cases over {} graphs", fixtures().len()))
}

fn c7_reflexivity() -> Outcome {
    let results: Vec<Result<(), String>> = catalog()
        .par_iter()
        .zip(catalog_qps())
        .map(|(c, qp)| {
            let g = &c.graph;
            ensure(reflexivity_check(g, 3).map_err(|e| e.to_string())?, || {
                format!("lattice condition fails on {}", g.to_text())
            })?;
            let h = h_star(g).map_err(|e| e.to_string())?;
            ensure(h.is_palindromic() && h.h[0] == 1, || format!("h* = {:?}", h.h))?;
            // Σh = m! · lead(L(4t)) = m! · 4^m · lead(L(t))
            let m = c.edges as u32;
            let fact: Q = (1..=m as i64).map(q).product();
            let lead = &qp.leading_coefficients()[0] * q(4i64.pow(m));
            ensure(Q::from_integer(h.sum().into()) == fact * lead, || {
                format!("h* sum {} disagrees with the volume", h.sum())
            })
        })
        .collect();
    results.into_iter().collect::<Result<(), String>>()?;
    let claw_h = h_star(&claw()).map_err(|e| e.to_string())?;
    ensure(claw_h.h == [1, 7, 7, 1], || format!("claw h* {:?}", claw_h.h))?;
    Ok(format!("{} graphs with m <= 7; claw h* = (1,7,7,1)", catalog().len()))
}

fn c8_semi_reflexive() -> Outcome {
    let samples = [qr(1, 2), qr(5, 4), qr(11, 4), qr(10, 3)];
    for (name, g) in [("claw", claw()), ("theta", theta()), ("dumbbell", dumbbell())] {
        let r = semi_reflexive_check(&g, &samples).map_err(|e| e.to_string())?;
        ensure(r.violations == 0, || format!("{name}: {r:?}"))?;
    }
    Ok("3 graphs x 4 rational dilations".into())
}

fn c9_nni() -> Outcome {
    let trees: Vec<_> = connected_13_graphs(9).into_iter().filter(|c| c.graph.is_tree()).collect();
    let mut tree_pairs = 0;
    for a in &trees {
        for b in trees.iter().filter(|b| b.edges == a.edges) {
            let seq = tree_sequence(&a.graph, &b.graph).map_err(|e| e.to_string())?;
            ensure(seq.replay(&a.graph).map_err(|e| e.to_string())? == b.graph, || {
                "tree replay mismatch".into()
            })?;
            tree_pairs += 1;
        }
    }
    let all = connected_13_graphs(6);
    let mut graph_pairs = 0;
    for a in &all {
        for b in all.iter().filter(|b| (b.vertices, b.edges) == (a.vertices, a.edges)) {
            for restrict in [false, true] {
                let seq = graph_sequence(&a.graph, &b.graph, restrict).map_err(|e| e.to_string())?;
                ensure(seq.replay(&a.graph).map_err(|e| e.to_string())? == b.graph, || {
                    "graph replay mismatch".into()
                })?;
                ensure(!restrict || pivots_respect_trees(&a.graph, &seq), || {
                    "pivot outside the spanning trees".into()
                })?;
            }
            graph_pairs += 1;
        }
    }
    Ok(format!("{tree_pairs} tree pairs, {graph_pairs} graph pairs (both flag values)"))
}

fn c10_oracles() -> Outcome {
    let mut checked = 0;
    for c in catalog().iter().filter(|c| c.graph.is_tree()) {
        let sys = inequality_system(&c.graph).map_err(|e| e.to_string())?;
        for t in 0..=12u64 {
            let a = count_tree_dp(&c.graph, t).map_err(|e| e.to_string())?.count;
            let b = count_backtracking(&sys, &q(t as i64)).map_err(|e| e.to_string())?.count;
            ensure(a == b, || format!("m={} t={t}: dp {a}, backtracking {b}", c.edges))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (tree, t) pairs"))
}

/// Failures that cannot be fixed in code, with their exact expected message.
/// The printed odd t coefficient of row 3, 791/3360 (= 113/480), gives
/// non-integer values at odd t (143/140 at t = 1); the computed one matches
/// brute-force counts.
const KNOWN_UNATTAINABLE: &[(usize, &str)] = &[(1, "row 3 odd t^1: computed 719/3360, table 113/480")];

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("tree table", c1_tree_table),
        ("NNI invariance of quasi-polynomials", c2_invariance),
        ("Verlinde agreement", c3_verlinde),
        ("volume", c4_volume),
        ("scissors tiling", c5_scissors),
        ("weighted NNI properties", c6_weighted_properties),
        ("reflexivity", c7_reflexivity),
        ("semi-reflexivity", c8_semi_reflexive),
        ("NNI engine soundness", c9_nni),
        ("counting oracle equivalence", c10_oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                let known = KNOWN_UNATTAINABLE.contains(&(i + 1, why.as_str()));
                if !known {
                    failed += 1;
                }
                let tag = if known { " (known: printed coefficient is inconsistent)" } else { "" };
                println!("criterion {:>2} FAIL  {name}: {why}{tag} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{failed} unexpected failure(s)");
    if failed > 0 {
        std::process::exit(1);
    }
}
