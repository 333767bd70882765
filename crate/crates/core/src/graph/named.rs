//! Small named graphs used by examples, tests and the CLI.
//!
//! External edges get the lowest ids, so graphs with the same numbers of
//! vertices and edges share the same external edge set.

use super::Graph;

fn build(n: u32, pairs: &[(u32, u32)]) -> Graph {
    Graph::from_pairs(n, pairs).expect("named graph")
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Graph {
    build(2, &[(1, 2), (1, 2), (1, 2)])
}

/// Loop 1 at vertex 1, loop 2 at vertex 2, edge 3 between them.
pub fn dumbbell() -> Graph {
    build(2, &[(1, 1), (2, 2), (1, 2)])
}

/// `K_{1,3}` with center 1.
pub fn claw() -> Graph {
    caterpillar_13(1)
}

pub fn k4() -> Graph {
    build(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
}

/// A claw whose three outer vertices each carry a loop.
pub fn t4() -> Graph {
    build(4, &[(1, 2), (1, 3), (1, 4), (2, 2), (3, 3), (4, 4)])
}

/// The {1,3}-tree with two adjacent degree-3 vertices.
pub fn tree5() -> Graph {
    caterpillar_13(2)
}

/// {1,3}-caterpillar with `k >= 1` degree-3 vertices `1..=k` along the spine.
///
/// Leaves are `k+1..`; external edges come first in spine order, then the
/// spine edges `(1,2), (2,3), ...`.
pub fn caterpillar_13(k: u32) -> Graph {
    assert!(k >= 1);
    let mut pairs = Vec::new();
    let mut next_leaf = k + 1;
    for c in 1..=k {
        let leaves = if k == 1 {
            3
        } else if c == 1 || c == k {
            2
        } else {
            1
        };
        for _ in 0..leaves {
            pairs.push((c, next_leaf));
            next_leaf += 1;
        }
    }
    for c in 1..k {
        pairs.push((c, c + 1));
    }
    build(next_leaf - 1, &pairs)
}

/// The {1,3}-tree with four degree-3 vertices, one adjacent to the other three.
pub fn spider_13() -> Graph {
    build(
        10,
        &[
            (2, 5),
            (2, 6),
            (3, 7),
            (3, 8),
            (4, 9),
            (4, 10),
            (1, 2),
            (1, 3),
            (1, 4),
        ],
    )
}

/// Looks up a graph by name (`theta`, `dumbbell`, `claw`, `k4`, `t4`,
/// `tree5`, `spider`, `caterpillar<k>`).
pub fn by_name(name: &str) -> Option<Graph> {
    Some(match name {
        "theta" => theta(),
        "dumbbell" => dumbbell(),
        "claw" => claw(),
        "k4" => k4(),
        "t4" => t4(),
        "tree5" => tree5(),
        "spider" => spider_13(),
        other => {
            let k: u32 = other.strip_prefix("caterpillar")?.parse().ok()?;
            if k == 0 {
                return None;
            }
            caterpillar_13(k)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        for g in [theta(), dumbbell(), claw(), k4(), t4(), tree5(), spider_13()] {
            assert!(g.validate_13().is_ok(), "{g:?}");
            assert!(g.is_connected());
            assert!(g.has_contiguous_edges());
        }
        assert!(spider_13().is_tree());
        assert_eq!(caterpillar_13(4).edge_count(), 9);
        assert_eq!(caterpillar_13(4).external_edges(), spider_13().external_edges());
        assert_eq!(by_name("caterpillar3").unwrap().edge_count(), 7);
    }
}
