use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet};

/// A simple path given by its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(verts: Vec<usize>) -> Path {
        debug_assert!(!verts.is_empty());
        debug_assert!({
            let mut sorted = verts.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        });
        Path { verts }
    }

    /// Reconstruct a path from its edge set, starting at the endpoint `start`.
    pub fn from_edge_set(start: usize, edges: &EdgeSet) -> Result<Path> {
        if edges.is_empty() {
            return Ok(Path::new(vec![start]));
        }
        let mut at: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
        for &e in edges {
            at.entry(e.u).or_default().push(e);
            at.entry(e.v).or_default().push(e);
        }
        let bad = || Error::InvalidInput("edge set is not a path from the given vertex".into());
        if at.get(&start).map(|v| v.len()) != Some(1) {
            return Err(bad());
        }
        let mut verts = vec![start];
        let mut used = EdgeSet::new();
        let mut cur = start;
        loop {
            let step = at[&cur].iter().find(|e| !used.contains(e));
            match step {
                None => break,
                Some(&e) => {
                    used.insert(e);
                    cur = e.other(cur);
                    verts.push(cur);
                }
            }
        }
        if used.len() != edges.len() || verts.len() != edges.len() + 1 {
            return Err(bad());
        }
        Ok(Path::new(verts))
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        *self.verts.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.verts
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]))
            .collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    pub fn reversed(&self) -> Path {
        let mut verts = self.verts.clone();
        verts.reverse();
        Path::new(verts)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }

    /// Subpath between two positions (inclusive); `a <= b`.
    pub fn slice(&self, a: usize, b: usize) -> Path {
        Path::new(self.verts[a..=b].to_vec())
    }

    /// Concatenate with another path starting where this one ends.
    pub fn join(&self, other: &Path) -> Path {
        assert_eq!(self.last(), other.first());
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&other.verts()[1..]);
        Path::new(verts)
    }
}

/// A circuit stored in canonical form: the least vertex first, and the
/// traversal direction chosen so that the second vertex is the smaller of the
/// first vertex's two neighbours. Two circuits are equal iff they have the
/// same edge set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    verts: Vec<usize>,
}

impl Circuit {
    /// Canonicalise a vertex cycle (first vertex not repeated at the end).
    pub fn from_vertex_cycle(cycle: &[usize]) -> Circuit {
        assert!(cycle.len() >= 3);
        let l = cycle.len();
        let start = (0..l).min_by_key(|&i| cycle[i]).unwrap();
        let succ = cycle[(start + 1) % l];
        let pred = cycle[(start + l - 1) % l];
        let mut verts = Vec::with_capacity(l);
        if succ <= pred {
            for i in 0..l {
                verts.push(cycle[(start + i) % l]);
            }
        } else {
            for i in 0..l {
                verts.push(cycle[(start + l - i) % l]);
            }
        }
        Circuit { verts }
    }

    /// Reconstruct a circuit from its edge set, which must be a single cycle.
    pub fn from_edge_set(edges: &EdgeSet) -> Result<Circuit> {
        let bad = || Error::InvalidInput("edge set is not a single circuit".into());
        if edges.len() < 3 {
            return Err(bad());
        }
        let mut at: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
        for &e in edges {
            at.entry(e.u).or_default().push(e);
            at.entry(e.v).or_default().push(e);
        }
        if at.values().any(|v| v.len() != 2) {
            return Err(bad());
        }
        let start = *at.keys().next().unwrap();
        let mut verts = vec![start];
        let mut prev_edge = at[&start][0];
        let mut cur = prev_edge.other(start);
        while cur != start {
            verts.push(cur);
            let e = *at[&cur].iter().find(|&&e| e != prev_edge).unwrap();
            prev_edge = e;
            cur = e.other(cur);
        }
        if verts.len() != edges.len() {
            return Err(bad()); // more than one cycle
        }
        Ok(Circuit::from_vertex_cycle(&verts))
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    /// Number of vertices = number of edges.
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_even(&self) -> bool {
        self.len() % 2 == 0
    }

    /// Edges in canonical traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let l = self.verts.len();
        (0..l)
            .map(|i| Edge::new(self.verts[i], self.verts[(i + 1) % l]))
            .collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }

    /// Number of edges traversed from smaller to larger endpoint, mod 2,
    /// following the canonical direction. For even circuits this parity does
    /// not depend on the direction chosen.
    pub fn ascent_parity(&self) -> u8 {
        let l = self.verts.len();
        let asc = (0..l)
            .filter(|&i| self.verts[i] < self.verts[(i + 1) % l])
            .count();
        (asc % 2) as u8
    }

    /// The two edges of the circuit at vertex `v`.
    pub fn edges_at(&self, v: usize) -> Option<(Edge, Edge)> {
        let i = self.position(v)?;
        let l = self.verts.len();
        let prev = self.verts[(i + l - 1) % l];
        let next = self.verts[(i + 1) % l];
        Some((Edge::new(prev, v), Edge::new(v, next)))
    }

    /// Lay the circuit out as a path by removing one of its edges, running
    /// from one endpoint of `e` all the way round to the other. `None` if
    /// `e` is not a circuit edge.
    pub fn cut_at(&self, e: Edge) -> Option<Path> {
        let l = self.verts.len();
        let i = (0..l).find(|&i| Edge::new(self.verts[i], self.verts[(i + 1) % l]) == e)?;
        Some(Path::new(
            (0..l).map(|k| self.verts[(i + 1 + k) % l]).collect(),
        ))
    }

    /// Maximal runs of circuit edges that lie outside `inside`, as paths in
    /// traversal order. At least one circuit edge must belong to `inside`,
    /// so that every run is a proper path delimited on both sides.
    pub fn arcs_outside(&self, inside: &EdgeSet) -> Vec<Path> {
        let l = self.verts.len();
        let edge = |i: usize| Edge::new(self.verts[i % l], self.verts[(i + 1) % l]);
        let start = (0..l)
            .find(|&i| inside.contains(&edge(i)))
            .expect("circuit has no edge in `inside`");
        let mut arcs = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        for k in 1..=l {
            let i = (start + k) % l;
            if inside.contains(&edge(i)) {
                if !run.is_empty() {
                    arcs.push(Path::new(run.clone()));
                    run.clear();
                }
            } else {
                if run.is_empty() {
                    run.push(self.verts[i]);
                }
                run.push(self.verts[(i + 1) % l]);
            }
        }
        arcs
    }

    /// Like [`Circuit::arcs_outside`], but a run is additionally split
    /// wherever it passes through a vertex of `through`, so the reported
    /// paths have all internal vertices outside `through` as well. The
    /// circuit must meet `inside` or pass through `through` somewhere.
    pub fn arcs_outside_strict(
        &self,
        inside: &EdgeSet,
        through: &std::collections::BTreeSet<usize>,
    ) -> Vec<Path> {
        let l = self.verts.len();
        let edge = |i: usize| Edge::new(self.verts[i % l], self.verts[(i + 1) % l]);
        // A run can never continue past position `start + 1`: either the edge
        // before it is inside, or the vertex there splits runs.
        let start = (0..l)
            .find(|&i| inside.contains(&edge(i)) || through.contains(&self.verts[(i + 1) % l]))
            .expect("circuit avoids the subgraph entirely");
        let mut arcs = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        for k in 1..=l {
            let i = (start + k) % l;
            if inside.contains(&edge(i)) {
                if !run.is_empty() {
                    arcs.push(Path::new(run.clone()));
                    run.clear();
                }
            } else {
                if run.is_empty() {
                    run.push(self.verts[i]);
                }
                let next = self.verts[(i + 1) % l];
                run.push(next);
                if through.contains(&next) {
                    arcs.push(Path::new(run.clone()));
                    run.clear();
                }
            }
        }
        if !run.is_empty() {
            arcs.push(Path::new(run));
        }
        arcs
    }
}
