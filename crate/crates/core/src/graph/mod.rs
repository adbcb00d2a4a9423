pub mod canon;
pub mod path;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// An undirected edge. Invariant: `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "loop edge");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v);
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// Symmetric difference of two edge sets.
pub fn sym_diff(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.symmetric_difference(b).cloned().collect()
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl Graph {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = Vec::with_capacity(pairs.len());
        let mut seen = BTreeSet::new();
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let e = Edge::new(a, b);
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
            edges.push(e);
        }
        edges.sort();
        Ok(Graph::from_sorted(n, edges))
    }

    /// Internal constructor; `edges` must be sorted, deduplicated and in range.
    pub(crate) fn from_sorted(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn from_edge_set(n: usize, edges: &EdgeSet) -> Graph {
        Graph::from_sorted(n, edges.iter().cloned().collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().cloned().collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a >= self.n || b >= self.n {
            return false;
        }
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn has(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Index of an edge in the sorted edge list.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    // ---- edge-list format ----
    //
    // Line 1: "n m". Then m lines "u v" with 0-based vertex ids.

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::BadHeader(String::new()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadHeader(header.to_string()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadHeader(header.to_string()))?;
        if it.next().is_some() {
            return Err(Error::BadHeader(header.to_string()));
        }
        let mut pairs = Vec::with_capacity(m);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let bad = || Error::BadEdgeLine {
                line: idx + 1,
                text: line.to_string(),
            };
            let u: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let v: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            pairs.push((u, v));
        }
        if pairs.len() != m {
            return Err(Error::BadHeader(format!(
                "header says {} edges, found {}",
                m,
                pairs.len()
            )));
        }
        Graph::new(n, &pairs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }

    // ---- derived graphs ----

    pub fn minus_edges(&self, remove: &[Edge]) -> Graph {
        let removing: BTreeSet<Edge> = remove.iter().cloned().collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !removing.contains(e))
            .cloned()
            .collect();
        Graph::from_sorted(self.n, edges)
    }

    pub fn plus_edges(&self, add: &[Edge]) -> Result<Graph> {
        let mut set = self.edge_set();
        for e in add {
            if e.v >= self.n {
                return Err(Error::VertexOutOfRange(e.v, self.n));
            }
            if !set.insert(*e) {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
        }
        Ok(Graph::from_edge_set(self.n, &set))
    }

    /// Subgraph on the same vertex id space consisting of the given edges.
    pub fn edge_subgraph(&self, edges: &EdgeSet) -> Graph {
        debug_assert!(edges.iter().all(|e| self.has(*e)));
        Graph::from_edge_set(self.n, edges)
    }

    // ---- connectivity ----

    /// Connected components over the full vertex set (isolated vertices form
    /// their own components). Each component is sorted; components are ordered
    /// by their least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let alive = vec![true; self.n];
        self.components_among(&alive)
    }

    /// Connected components of the subgraph induced by `alive` vertices.
    pub fn components_among(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Vertices that have at least one incident edge.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// True if the edges form a connected subgraph on their support.
    pub fn support_connected(&self) -> bool {
        let mut alive = vec![false; self.n];
        for e in &self.edges {
            alive[e.u] = true;
            alive[e.v] = true;
        }
        self.components_among(&alive).len() <= 1
    }

    /// Proper 2-colouring, if one exists. Colour 0 goes to the least vertex of
    /// each component, so the result is deterministic.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// 3-connectivity by brute force. Requires at least four vertices.
    pub fn is_three_connected(&self) -> Result<bool> {
        if self.n < 4 {
            return Err(Error::TooSmall("3-connectivity needs at least 4 vertices"));
        }
        if !self.is_connected() {
            return Ok(false);
        }
        let mut alive = vec![true; self.n];
        for v in 0..self.n {
            alive[v] = false;
            if self.components_among(&alive).len() > 1 {
                return Ok(false);
            }
            alive[v] = true;
        }
        Ok(self.find_two_cut().is_none())
    }

    /// Lexicographically least pair {u, v} whose removal disconnects the
    /// graph, if any. Assumes the graph is connected and survives single
    /// vertex removal.
    pub fn find_two_cut(&self) -> Option<(usize, usize)> {
        let mut alive = vec![true; self.n];
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                alive[u] = false;
                alive[v] = false;
                let split = self.components_among(&alive).len() > 1;
                alive[u] = true;
                alive[v] = true;
                if split {
                    return Some((u, v));
                }
            }
        }
        None
    }

    // ---- contraction ----

    /// Contract the vertex set `x` (which must induce a connected subgraph)
    /// to a single vertex. Vertex ids are compacted: the merged vertex takes
    /// the slot of `min(x)` and remaining ids keep their relative order.
    /// Parallel edges arising from the merge are recorded in
    /// `edge_preimages` so witnesses can be pulled back.
    pub fn contract_vertex_set(&self, x: &BTreeSet<usize>) -> Result<Contraction> {
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in x {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v, self.n));
            }
        }
        let mut alive = vec![false; self.n];
        for &v in x {
            alive[v] = true;
        }
        if self.components_among(&alive).len() != 1 {
            return Err(Error::DisconnectedContractionSet);
        }
        let rep = *x.iter().next().unwrap();
        // old id -> pre-compaction id
        let to_rep = |v: usize| if x.contains(&v) { rep } else { v };
        let mut kept: Vec<usize> = (0..self.n).filter(|v| !x.contains(v) || *v == rep).collect();
        kept.sort_unstable();
        let mut compact = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            compact[old] = new;
        }
        let vertex_map: Vec<usize> = (0..self.n).map(|v| compact[to_rep(v)]).collect();
        let mut preimages: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
        for e in &self.edges {
            let a = vertex_map[e.u];
            let b = vertex_map[e.v];
            if a == b {
                continue; // edge inside the contracted set
            }
            preimages.entry(Edge::new(a, b)).or_default().push(*e);
        }
        let edges: Vec<Edge> = preimages.keys().cloned().collect();
        Ok(Contraction {
            graph: Graph::from_sorted(kept.len(), edges),
            vertex: compact[rep],
            vertex_map,
            edge_preimages: preimages,
        })
    }
}

/// Result of contracting a vertex set to a single vertex.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    /// New id of the merged vertex.
    pub vertex: usize,
    /// Old vertex id -> new vertex id.
    pub vertex_map: Vec<usize>,
    /// New edge -> the old edges that map onto it (sorted). Entries with more
    /// than one preimage are parallel edges merged by the contraction.
    pub edge_preimages: BTreeMap<Edge, Vec<Edge>>,
}

impl Contraction {
    pub fn map_edge(&self, e: Edge) -> Option<Edge> {
        let a = self.vertex_map[e.u];
        let b = self.vertex_map[e.v];
        if a == b {
            None
        } else {
            Some(Edge::new(a, b))
        }
    }

    /// Lexicographically least preimage of a contracted edge.
    pub fn least_preimage(&self, e: Edge) -> Option<Edge> {
        self.edge_preimages.get(&e).map(|v| v[0])
    }
}

/// Splice two graphs at vertices of equal degree. `pairing` matches each
/// neighbour of `v` in `h` with a neighbour of `w` in `k`; the spliced graph
/// is `(h - v) ∪ (k - w)` plus one edge per pair. Ids: `h - v` is compacted
/// first, then `k - w` follows, shifted past it.
pub fn splice(
    h: &Graph,
    k: &Graph,
    v: usize,
    w: usize,
    pairing: &[(usize, usize)],
) -> Result<Graph> {
    if v >= h.vertex_count() {
        return Err(Error::VertexOutOfRange(v, h.vertex_count()));
    }
    if w >= k.vertex_count() {
        return Err(Error::VertexOutOfRange(w, k.vertex_count()));
    }
    let dv = h.degree(v);
    let dw = k.degree(w);
    if dv != dw {
        return Err(Error::DegreeMismatch(dv, dw));
    }
    let nv: BTreeSet<usize> = h.neighbors(v).iter().cloned().collect();
    let nw: BTreeSet<usize> = k.neighbors(w).iter().cloned().collect();
    let left: BTreeSet<usize> = pairing.iter().map(|p| p.0).collect();
    let right: BTreeSet<usize> = pairing.iter().map(|p| p.1).collect();
    if pairing.len() != dv || left != nv || right != nw {
        return Err(Error::InvalidPairing);
    }
    let map_h = |a: usize| if a > v { a - 1 } else { a };
    let shift = h.vertex_count() - 1;
    let map_k = |c: usize| shift + if c > w { c - 1 } else { c };
    let mut pairs = Vec::new();
    for e in h.edges() {
        if !e.touches(v) {
            pairs.push((map_h(e.u), map_h(e.v)));
        }
    }
    for e in k.edges() {
        if !e.touches(w) {
            pairs.push((map_k(e.u), map_k(e.v)));
        }
    }
    for &(a, b) in pairing {
        pairs.push((map_h(a), map_k(b)));
    }
    Graph::new(h.vertex_count() + k.vertex_count() - 2, &pairs)
}

/// Glue two graphs by identifying edge `x` of `h` with edge `y` of `k`
/// (smaller endpoint onto smaller endpoint). With `keep_edge` the identified
/// edge stays in the result; otherwise it is dropped. Parallel edges created
/// by the identification are merged.
pub fn glue(h: &Graph, k: &Graph, x: Edge, y: Edge, keep_edge: bool) -> Result<Graph> {
    if !h.has(x) {
        return Err(Error::EdgeNotPresent(x.u, x.v));
    }
    if !k.has(y) {
        return Err(Error::EdgeNotPresent(y.u, y.v));
    }
    // k ids: y.u -> x.u, y.v -> x.v, the rest are compacted and shifted.
    let mut next = h.vertex_count();
    let mut map_k = vec![usize::MAX; k.vertex_count()];
    for c in 0..k.vertex_count() {
        map_k[c] = if c == y.u {
            x.u
        } else if c == y.v {
            x.v
        } else {
            let id = next;
            next += 1;
            id
        };
    }
    let mut set: EdgeSet = h.edge_set();
    if !keep_edge {
        set.remove(&x);
    }
    for e in k.edges() {
        if *e == y {
            continue;
        }
        set.insert(Edge::new(map_k[e.u], map_k[e.v]));
    }
    // Note: when !keep_edge a k-edge may map exactly onto x, putting it back.
    Ok(Graph::from_edge_set(next, &set))
}

/// Decide whether the graph (restricted to its support) is a subdivision of
/// K3,3 in which every branch path has odd edge count. Such subdivisions are
/// exactly the graphs obtainable from K3,3 by repeatedly replacing an edge
/// with a path on an even number of vertices.
pub fn is_even_subdivision_of_k33(g: &Graph) -> bool {
    let support = g.support();
    if support.is_empty() || !g.support_connected() {
        return false;
    }
    let mut branch = Vec::new();
    for &v in &support {
        match g.degree(v) {
            2 => {}
            3 => branch.push(v),
            _ => return false,
        }
    }
    if branch.len() != 6 {
        return false;
    }
    let is_branch = |v: usize| g.degree(v) == 3;
    // Follow each chain of degree-2 vertices from a branch vertex to the next
    // branch vertex, recording its length.
    let mut chains: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &b in &branch {
        for &first in g.neighbors(b) {
            let mut prev = b;
            let mut cur = first;
            let mut len = 1usize;
            while !is_branch(cur) {
                let nbrs = g.neighbors(cur);
                let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                prev = cur;
                cur = next;
                len += 1;
            }
            if cur == b {
                return false; // chain closes on its own branch vertex
            }
            let key = (b.min(cur), b.max(cur));
            match chains.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(vec![len]);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    e.get_mut().push(len);
                }
            }
        }
    }
    // Each chain was discovered once from each end.
    let mut lens: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (key, found) in &chains {
        if found.len() != 2 || found[0] != found[1] {
            return false; // parallel chains between the same pair
        }
        lens.insert(*key, found[0]);
    }
    if lens.len() != 9 {
        return false;
    }
    if lens.values().any(|&l| l % 2 == 0) {
        return false; // a branch path of even edge count
    }
    // The suppressed graph has 9 distinct edges on 6 cubic vertices; it is
    // K3,3 exactly when it is bipartite with sides of size 3.
    let idx: BTreeMap<usize, usize> = branch.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let pairs: Vec<(usize, usize)> = lens.keys().map(|&(a, b)| (idx[&a], idx[&b])).collect();
    let suppressed = match Graph::new(6, &pairs) {
        Ok(s) => s,
        Err(_) => return false,
    };
    match suppressed.bipartition() {
        Some(colour) => colour.iter().filter(|&&c| c == 0).count() == 3,
        None => false,
    }
}
