//! `trivalent`: NNI sequences, weighted NNI dissections and Ehrhart data for
//! {1,3}-graphs.
//!
//! Exit status is 0 on success, 1 when a computation or check fails and 2
//! when the command line cannot be parsed.

mod args;
mod output;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde::{Deserialize, Serialize};
use trivalent::ehrhart::{
    count, count_backtracking, count_tree_dp, inequality_system, quasi_polynomial, semi_reflexive_check,
    verlinde_count_with_budget, volume_checks, zagier_polynomial, CountReport, QuasiPolynomial,
};
use trivalent::graph::{connected_13_graphs, named, parse_graph, Graph};
use trivalent::nni::{apply_nni, graph_sequence, pivots_respect_trees, MoveSequence, Trail};
use trivalent::rational::{parse_q, Q};
use trivalent::reflexivity::{h_star, reflexive_system, reflexivity_report, vertex_enumeration};
use trivalent::scissors::{build_decomposition, verify_decomposition, Decomposition};
use trivalent::wnni::{apply_weighted_nni, case_of, resolve_site, Weighting};

use args::*;
use output::{emit, Format, Table};

fn load_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_graph(&text).with_context(|| format!("parsing {arg}"));
    }
    named::by_name(arg).ok_or_else(|| anyhow!("{arg}: no such file or named graph"))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_weights(s: &str) -> Result<Weighting> {
    let v = s.split(',').map(parse_q).collect::<trivalent::Result<Vec<Q>>>()?;
    Ok(Weighting(v))
}

#[derive(Serialize)]
struct GraphInfo {
    vertices: usize,
    edges: usize,
    degree_sequence: Vec<usize>,
    connected: bool,
    tree: bool,
    cycle_rank: usize,
    external_edges: Vec<u32>,
    internal_edges: Vec<u32>,
}

fn graph_cmd(cmd: GraphCmd, fmt: Format) -> Result<()> {
    match cmd {
        GraphCmd::Validate { graph } => {
            let g = load_graph(&graph)?;
            let report = g.validate_13();
            emit(fmt, &report, || Table::single("validation", report.to_string()))?;
            if !report.is_ok() {
                bail!("not a {{1,3}}-graph: {report}");
            }
        }
        GraphCmd::Show { graph } => print!("{}", load_graph(&graph)?.to_text()),
        GraphCmd::Info { graph } => {
            let g = load_graph(&graph)?;
            let classes = g.classify_edges();
            let info = GraphInfo {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                degree_sequence: g.degree_sequence(),
                connected: g.is_connected(),
                tree: g.is_tree(),
                cycle_rank: g.cycle_rank(),
                external_edges: classes.external.iter().map(|e| e.0).collect(),
                internal_edges: classes.internal.iter().map(|e| e.0).collect(),
            };
            emit(fmt, &info, || {
                Table::pairs(vec![
                    ("vertices", info.vertices.to_string()),
                    ("edges", info.edges.to_string()),
                    ("degrees", format!("{:?}", info.degree_sequence)),
                    ("connected", info.connected.to_string()),
                    ("tree", info.tree.to_string()),
                    ("cycle rank", info.cycle_rank.to_string()),
                ])
            })?;
        }
    }
    Ok(())
}

fn nni_cmd(cmd: NniCmd, fmt: Format) -> Result<()> {
    match cmd {
        NniCmd::Apply { graph, trail } => {
            let g = load_graph(&graph)?;
            let h = apply_nni(&g, &Trail::parse(&trail)?)?;
            print!("{}", h.to_text());
        }
        NniCmd::Sequence {
            a,
            b,
            restrict,
            snapshots,
        } => {
            let (g, h) = (load_graph(&a)?, load_graph(&b)?);
            let mut seq = graph_sequence(&g, &h, restrict)?;
            if snapshots {
                seq = seq.with_snapshots(&g)?;
            }
            emit(fmt, &seq, || {
                Table::rows(
                    &["step", "trail"],
                    seq.moves.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), t.to_string()]),
                )
            })?;
            if restrict && !pivots_respect_trees(&g, &seq) {
                bail!("a pivot lies outside the chosen spanning trees");
            }
        }
        NniCmd::Replay { graph, sequence, expect } => {
            let g = load_graph(&graph)?;
            let seq: MoveSequence = read_json(&sequence)?;
            let h = seq.replay(&g)?;
            if let Some(e) = expect {
                let target = load_graph(&e)?;
                if h != target {
                    bail!("replay does not reproduce {e}");
                }
            }
            print!("{}", h.to_text());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WnniResult {
    case: String,
    graph: String,
    #[serde(with = "trivalent::rational::pair_vec")]
    weights: Vec<Q>,
}

fn wnni_cmd(cmd: WnniCmd, fmt: Format) -> Result<()> {
    let WnniCmd::Apply { graph, trail, weights } = cmd;
    let g = load_graph(&graph)?;
    let w = parse_weights(&weights)?;
    let site = resolve_site(&g, &Trail::parse(&trail)?)?;
    let case = case_of(&w, &site);
    let (h, w2) = apply_weighted_nni(&g, &w, &site)?;
    let out = WnniResult {
        case: case.to_string(),
        graph: h.to_text(),
        weights: w2.0,
    };
    emit(fmt, &out, || {
        Table::pairs(vec![
            ("case", out.case.clone()),
            ("weights", out.weights.iter().map(Q::to_string).collect::<Vec<_>>().join(",")),
        ])
    })
}

fn count_one(g: &Graph, t: &Q, method: Method) -> Result<CountReport> {
    let integer = t.is_integer().then(|| t.to_integer().try_into().ok()).flatten();
    Ok(match (method, integer) {
        (Method::Auto, Some(n)) => count(g, n)?,
        (Method::TreeDp, Some(n)) => count_tree_dp(g, n)?,
        (Method::TreeDp, None) => bail!("tree DP needs an integer dilation, got {t}"),
        _ => count_backtracking(&inequality_system(g)?, t)?,
    })
}

#[derive(Serialize)]
struct VerlindeRow {
    t: u64,
    count: u128,
}

#[derive(Serialize)]
struct VerlindeReport {
    n: u32,
    #[serde(with = "trivalent::rational::pair_vec")]
    zagier: Vec<Q>,
    values: Vec<VerlindeRow>,
}

fn ehrhart_cmd(cmd: EhrhartCmd, fmt: Format) -> Result<()> {
    match cmd {
        EhrhartCmd::Count { graph, t, at, method } => {
            let g = load_graph(&graph)?;
            let mut ts: Vec<Q> = t.map(|r| r.values().map(|x| Q::from_integer(x.into())).collect()).unwrap_or_default();
            for s in at {
                ts.push(parse_q(&s)?);
            }
            if ts.is_empty() {
                bail!("give --t a..b or --at");
            }
            let reports = ts.iter().map(|t| count_one(&g, t, method)).collect::<Result<Vec<_>>>()?;
            emit(fmt, &reports, || {
                Table::rows(&["t", "L(t)"], reports.iter().map(|r| vec![r.t.to_string(), r.count.to_string()]))
            })?;
        }
        EhrhartCmd::Qp { graph } => {
            let qp = quasi_polynomial(&load_graph(&graph)?)?;
            emit(fmt, &qp, || output::qp_table(&qp))?;
        }
        EhrhartCmd::Verlinde { n, t, budget } => {
            let zagier = zagier_polynomial(n)?;
            let values = t
                .values()
                .filter(|t| t % 2 == 1)
                .map(|t| Ok(VerlindeRow { t, count: verlinde_count_with_budget(n, t, budget)? }))
                .collect::<Result<Vec<_>>>()?;
            let report = VerlindeReport { n, zagier, values };
            emit(fmt, &report, || {
                Table::rows(&["t", "L(t)"], report.values.iter().map(|r| vec![r.t.to_string(), r.count.to_string()]))
            })?;
        }
        EhrhartCmd::Volume { graph } => {
            let g = load_graph(&graph)?;
            let report = volume_checks(&g, &quasi_polynomial(&g)?)?;
            emit(fmt, &report, || {
                Table::pairs(vec![
                    ("expected", report.expected.to_string()),
                    ("leading", report.leading.iter().map(Q::to_string).collect::<Vec<_>>().join(",")),
                    ("pass", report.pass.to_string()),
                ])
            })?;
            if !report.pass {
                bail!("leading coefficients differ from the volume formula");
            }
        }
        EhrhartCmd::Semireflexive { graph, s } => {
            let samples = s.iter().map(|x| parse_q(x)).collect::<trivalent::Result<Vec<_>>>()?;
            let report = semi_reflexive_check(&load_graph(&graph)?, &samples)?;
            emit(fmt, &report, || {
                Table::rows(
                    &["s", "L(s)", "L(floor s)"],
                    report.samples.iter().map(|x| vec![x.s.to_string(), x.at_s.to_string(), x.at_floor.to_string()]),
                )
            })?;
            if report.violations > 0 {
                bail!("{} samples violate L(s) = L(floor s)", report.violations);
            }
        }
    }
    Ok(())
}

fn scissors_cmd(cmd: ScissorsCmd, fmt: Format) -> Result<()> {
    match cmd {
        ScissorsCmd::Build { a, b, restrict } => {
            let g = load_graph(&a)?;
            let seq = graph_sequence(&g, &load_graph(&b)?, restrict)?;
            let d = build_decomposition(&g, &seq)?;
            emit(fmt, &d, || output::pieces_table(&d))?;
        }
        ScissorsCmd::Verify {
            a,
            b,
            decomposition,
            restrict,
            t,
        } => {
            let d: Decomposition = match (decomposition, a, b) {
                (Some(path), _, _) => read_json(&path)?,
                (None, Some(a), Some(b)) => {
                    let g = load_graph(&a)?;
                    build_decomposition(&g, &graph_sequence(&g, &load_graph(&b)?, restrict)?)?
                }
                _ => bail!("give --a and --b, or --decomposition"),
            };
            let report = verify_decomposition(&d, &t.values().collect::<Vec<_>>())?;
            emit(fmt, &report, || output::verify_table(&report))?;
            if !report.pass {
                bail!("decomposition check failed");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VertexList {
    #[serde(serialize_with = "output::q_matrix")]
    vertices: Vec<Vec<Q>>,
}

fn reflexive_cmd(cmd: ReflexiveCmd, fmt: Format) -> Result<()> {
    match cmd {
        ReflexiveCmd::Check { graph, max_t } => {
            let report = reflexivity_report(&load_graph(&graph)?, max_t)?;
            emit(fmt, &report, || {
                Table::rows(
                    &["t", "interior of (t+1)Q", "tQ", "equal"],
                    report.dilates.iter().map(|d| {
                        vec![
                            d.t.to_string(),
                            d.interior_of_next.to_string(),
                            d.dilate.to_string(),
                            d.equal.to_string(),
                        ]
                    }),
                )
            })?;
            if !report.pass {
                bail!("lattice condition fails");
            }
        }
        ReflexiveCmd::Hstar { graph } => {
            let h = h_star(&load_graph(&graph)?)?;
            emit(fmt, &h, || Table::single("h*", format!("{:?}", h.h)))?;
        }
        ReflexiveCmd::Vertices { graph, at, reflexive } => {
            let g = load_graph(&graph)?;
            let sys = if reflexive { reflexive_system(&g)? } else { inequality_system(&g)? };
            let vertices = vertex_enumeration(&sys, &parse_q(&at)?)?;
            let list = VertexList { vertices };
            emit(fmt, &list, || {
                Table::rows(
                    &["vertex"],
                    list.vertices
                        .iter()
                        .map(|v| vec![v.iter().map(Q::to_string).collect::<Vec<_>>().join(" ")]),
                )
            })?;
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct TableRow {
    inner_vertices: usize,
    edges: usize,
    graph: String,
    quasi_polynomial: QuasiPolynomial,
}

fn tree_table(fmt: Format) -> Result<()> {
    let rows = connected_13_graphs(9)
        .into_iter()
        .filter(|c| c.graph.is_tree())
        .map(|c| {
            Ok(TableRow {
                inner_vertices: c.cubic_vertices,
                edges: c.edges,
                graph: c.graph.to_text(),
                quasi_polynomial: quasi_polynomial(&c.graph)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(fmt, &rows, || {
        let mut t = Table::default();
        for r in &rows {
            t.extend(output::qp_table(&r.quasi_polynomial).titled(&format!(
                "tree with {} degree-3 vertices",
                r.inner_vertices
            )));
        }
        t
    })
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Graph(c) => graph_cmd(c, fmt),
        Command::Nni(c) => nni_cmd(c, fmt),
        Command::Wnni(c) => wnni_cmd(c, fmt),
        Command::Ehrhart(c) => ehrhart_cmd(c, fmt),
        Command::Scissors(c) => scissors_cmd(c, fmt),
        Command::Reflexive(c) => reflexive_cmd(c, fmt),
        Command::TreeTable => tree_table(fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
