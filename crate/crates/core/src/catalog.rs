//! Small named graphs used all over the tests, plus the vertex-expansion
//! helper that replaces a vertex by an odd circuit.

use std::collections::BTreeSet;

use crate::graph::{Edge, Graph};

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    Graph::new(n, &pairs).unwrap()
}

/// Cycle 0-1-...-(n-1)-0.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &pairs).unwrap()
}

/// K3,3 with sides {0,1,2} and {3,4,5}.
pub fn k33() -> Graph {
    let mut pairs = Vec::new();
    for u in 0..3 {
        for v in 3..6 {
            pairs.push((u, v));
        }
    }
    Graph::new(6, &pairs).unwrap()
}

/// The Petersen graph: outer cycle 0..4, inner pentagram 5..9, spokes i-(i+5).
pub fn petersen() -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    for i in 0..5 {
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &pairs).unwrap()
}

/// The triangular prism: triangles {0,1,2} and {3,4,5} joined by a matching.
pub fn prism() -> Graph {
    Graph::new(
        6,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}

/// Replace vertex `v` by an odd circuit on `k` vertices. The neighbours of
/// `v`, in increasing order, are attached to consecutive circuit positions
/// 0, 1, 2, ...; position 0 reuses the id `v` and positions 1..k get the
/// fresh ids n, n+1, ... Returns the new graph together with the vertex set
/// of the inserted circuit. Contracting that set gives back exactly the
/// original graph (same ids), which is what the expansion tests rely on.
pub fn expand_vertex_to_odd_circuit(
    g: &Graph,
    v: usize,
    k: usize,
) -> (Graph, BTreeSet<usize>) {
    assert!(k >= 3 && k % 2 == 1, "need an odd circuit");
    assert!(g.degree(v) <= k, "not enough circuit positions");
    let n = g.vertex_count();
    let pos_id = |p: usize| if p == 0 { v } else { n + p - 1 };
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !e.touches(v))
        .map(|e| (e.u, e.v))
        .collect();
    for p in 0..k {
        pairs.push((pos_id(p), pos_id((p + 1) % k)));
    }
    for (i, &w) in g.neighbors(v).iter().enumerate() {
        pairs.push((w, pos_id(i)));
    }
    let expanded = Graph::new(n + k - 1, &pairs).unwrap();
    let x: BTreeSet<usize> = (0..k).map(pos_id).collect();
    (expanded, x)
}

/// Convenience: the edge between two vertices.
pub fn e(a: usize, b: usize) -> Edge {
    Edge::new(a, b)
}

/// The named graphs that ship as edge-list files under `catalog/`.
pub fn named() -> Vec<(&'static str, Graph)> {
    let spliced = crate::graph::splice(
        &complete(4),
        &complete(4),
        3,
        0,
        &[(0, 1), (1, 2), (2, 3)],
    )
    .unwrap();
    let glued = crate::graph::glue(&cycle(4), &cycle(4), e(0, 1), e(0, 1), false).unwrap();
    let glued_kept = crate::graph::glue(&cycle(4), &cycle(4), e(0, 1), e(0, 1), true).unwrap();
    vec![
        ("k2", complete(2)),
        ("c4", cycle(4)),
        ("c6", cycle(6)),
        ("k4", complete(4)),
        ("k33", k33()),
        ("petersen", petersen()),
        ("tri-expanded-k33", expand_vertex_to_odd_circuit(&k33(), 0, 3).0),
        ("spliced-k4s", spliced),
        ("glued-squares", glued),
        ("glued-squares-kept", glued_kept),
    ]
}
