use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::{Serialize, Serializer};
use trivalent::ehrhart::QuasiPolynomial;
use trivalent::rational::Q;
use trivalent::scissors::{Decomposition, Sense, VerifyReport};

/// `table` prints whitespace-separated columns with `#` headers, which gnuplot
/// reads directly.
#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Default)]
pub struct Table {
    lines: Vec<String>,
}

impl Table {
    pub fn single(key: &str, value: String) -> Self {
        Table {
            lines: vec![format!("# {key}"), value],
        }
    }

    pub fn pairs(items: Vec<(&str, String)>) -> Self {
        let width = items.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        Table {
            lines: items.into_iter().map(|(k, v)| format!("{k:width$}  {v}")).collect(),
        }
    }

    pub fn rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Self {
        let mut lines = vec![format!("# {}", header.join("\t"))];
        lines.extend(rows.into_iter().map(|r| r.join("\t")));
        Table { lines }
    }

    pub fn titled(mut self, title: &str) -> Self {
        self.lines.insert(0, format!("# {title}"));
        self
    }

    /// Appends `other` as a new gnuplot data block.
    pub fn extend(&mut self, other: Table) {
        if !self.lines.is_empty() {
            self.lines.extend([String::new(), String::new()]);
        }
        self.lines.extend(other.lines);
    }
}

pub fn emit<T: Serialize>(fmt: Format, value: &T, table: impl FnOnce() -> Table) -> Result<()> {
    let text = match fmt {
        Format::Json => serde_json::to_string(value)?,
        Format::Table => table().lines.join("\n"),
    };
    println!("{text}");
    Ok(())
}

fn poly_string(c: &[Q]) -> String {
    let mut s = String::new();
    for (k, x) in c.iter().enumerate() {
        let _ = write!(s, "{}{x}*t^{k}", if k == 0 { "" } else { " + " });
    }
    s
}

/// Constituents as comments, then `t L(t)` over two full periods and more.
pub fn qp_table(qp: &QuasiPolynomial) -> Table {
    let mut t = Table::default();
    t.lines.push(format!("# period {}", qp.period));
    for (r, c) in qp.constituents.iter().enumerate() {
        t.lines.push(format!("# t = {r} mod {}: {}", qp.period, poly_string(c)));
    }
    t.lines.push("# t\tL(t)".into());
    t.lines.extend((0..=16u64).map(|x| format!("{x}\t{}", qp.eval(x))));
    t
}

pub fn pieces_table(d: &Decomposition) -> Table {
    Table::rows(
        &["piece", "cases", "constraints", "det"],
        d.pieces.iter().enumerate().map(|(i, p)| {
            let cases: String = p.cases.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("");
            let cons = p
                .normals
                .iter()
                .zip(&p.senses)
                .map(|(n, s)| {
                    let op = match s {
                        Sense::WeakGe => ">=",
                        Sense::StrictLt => "<",
                    };
                    format!("{n:?}{op}0")
                })
                .collect::<Vec<_>>()
                .join(" ");
            let det = p.map.det().map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
            vec![i.to_string(), cases, cons, det]
        }),
    )
}

pub fn verify_table(r: &VerifyReport) -> Table {
    Table::rows(
        &["t", "source", "target", "pass"],
        r.dilations.iter().map(|d| {
            vec![
                d.t.to_string(),
                d.source_points.to_string(),
                d.target_points.to_string(),
                d.pass.to_string(),
            ]
        }),
    )
}

/// Rows of rationals as nested `[num, den]` pairs.
pub fn q_matrix<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct RowRef<'a>(#[serde(with = "trivalent::rational::pair_vec")] &'a [Q]);

    s.collect_seq(m.iter().map(|r| RowRef(r)))
}
