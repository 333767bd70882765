use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Parser)]
#[command(name = "trivalent", version, about = "NNI sequences and Ehrhart data for {1,3}-graphs")]
pub struct Cli {
    /// Worker threads for counting (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Nni(NniCmd),
    #[command(subcommand)]
    Wnni(WnniCmd),
    #[command(subcommand)]
    Ehrhart(EhrhartCmd),
    #[command(subcommand)]
    Scissors(ScissorsCmd),
    #[command(subcommand)]
    Reflexive(ReflexiveCmd),
    /// Quasi-polynomials of every {1,3}-tree with one to four degree-3 vertices.
    TreeTable,
}

/// Inclusive range `a..b`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

impl Range {
    pub fn values(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("not a nonnegative integer: {x:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Range { lo, hi })
    }
}

/// Every `--graph`, `--a` and `--b` takes a file in the `v`/`e` line format
/// or a built-in name: `theta`, `dumbbell`, `claw`, `k4`, `t4`, `tree5`,
/// `spider`, `caterpillar<k>`.
#[derive(Subcommand)]
pub enum GraphCmd {
    /// Check that every vertex has degree 1 or 3.
    Validate {
        #[arg(long)]
        graph: String,
    },
    Info {
        #[arg(long)]
        graph: String,
    },
    /// Print the graph in the line format.
    Show {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Subcommand)]
pub enum NniCmd {
    /// Apply one move given as `a,u,e,v,b`; prints the resulting graph.
    Apply {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        trail: String,
    },
    /// Construct a move sequence from `--a` to `--b`.
    Sequence {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Keep every pivot inside spanning trees of both graphs.
        #[arg(long)]
        restrict: bool,
        /// Record a fingerprint of every intermediate graph.
        #[arg(long)]
        snapshots: bool,
    },
    /// Replay a sequence (JSON as printed by `nni sequence`).
    Replay {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        sequence: PathBuf,
        /// Fail unless the result equals this graph.
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum WnniCmd {
    /// Apply one weighted move; weights are comma-separated rationals.
    Apply {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        trail: String,
        #[arg(long)]
        weights: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Auto,
    Backtracking,
    TreeDp,
}

#[derive(Subcommand)]
pub enum EhrhartCmd {
    /// Lattice points of tP_G.
    Count {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        t: Option<Range>,
        /// Extra dilations, possibly rational (`5/4`).
        #[arg(long, value_delimiter = ',')]
        at: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Ehrhart quasi-polynomial.
    Qp {
        #[arg(long)]
        graph: String,
    },
    /// Trigonometric formula for cubic graphs on `n` vertices at the odd t in range.
    Verlinde {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: Range,
        #[arg(long, env = "TRIVALENT_PRECISION", default_value_t = trivalent::ehrhart::PRECISION_BUDGET)]
        budget: f64,
    },
    /// Compare leading coefficients with |B_n| / (2 n!).
    Volume {
        #[arg(long)]
        graph: String,
    },
    /// Check L(s) = L(floor s) at rational samples.
    Semireflexive {
        #[arg(long)]
        graph: String,
        #[arg(long, value_delimiter = ',', default_value = "1/2,5/4,11/4,10/3")]
        s: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum ScissorsCmd {
    /// Dissect P_A along the move sequence from A to B.
    Build {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        restrict: bool,
    },
    /// Check the dissection on lattice points of the given dilations.
    Verify {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// A decomposition saved by `scissors build`.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        restrict: bool,
        #[arg(long, default_value = "0..4")]
        t: Range,
    },
}

#[derive(Subcommand)]
pub enum ReflexiveCmd {
    /// Lattice condition for 4P_G - 1 up to dilation `--max-t`.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 3)]
        max_t: u64,
    },
    /// h*-vector of 4P_G.
    Hstar {
        #[arg(long)]
        graph: String,
    },
    /// Vertices of P_G at dilation `--at`, or of 4P_G - 1 with `--reflexive`.
    Vertices {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "1")]
        at: String,
        #[arg(long)]
        reflexive: bool,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("0..6".parse::<Range>().unwrap(), Range { lo: 0, hi: 6 });
        assert_eq!("3".parse::<Range>().unwrap(), Range { lo: 3, hi: 3 });
        assert_eq!("2..=5".parse::<Range>().unwrap(), Range { lo: 2, hi: 5 });
        assert!("5..2".parse::<Range>().is_err());
        assert!("a..2".parse::<Range>().is_err());
    }
}
