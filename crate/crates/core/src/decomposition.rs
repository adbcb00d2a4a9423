//! Structure of 1-extendible graphs: the cycle and alternating spaces, ear
//! decompositions built from alternating circuits, the minimum number of
//! double-ear steps, and the barrier/brick decomposition tree.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

pub use crate::gf2::cycle_space_dim;

use crate::error::{Error, Result};
use crate::gf2::{edge_indicator, Bits};
use crate::graph::path::{Circuit, Path};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::internal;
use crate::limits::Limits;
use crate::matchings;

/// A subspace of GF(2)^width, kept as a spanning set whose members have
/// pairwise distinct leading ones (sorted by leading position).
#[derive(Debug, Clone)]
pub struct Gf2Space {
    width: usize,
    basis: Vec<Bits>,
}

impl Gf2Space {
    pub fn new(width: usize) -> Gf2Space {
        Gf2Space {
            width,
            basis: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Bits] {
        &self.basis
    }

    // Basis vectors carry no bit below their leading one, so one ascending
    // sweep fully reduces a vector.
    fn reduce(&self, v: &Bits) -> Bits {
        let mut v = v.clone();
        for b in &self.basis {
            if v.get(b.first_one().unwrap()) {
                v.xor_assign(b);
            }
        }
        v
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: &Bits) -> bool {
        assert_eq!(v.len(), self.width);
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(lead) => {
                let pos = self
                    .basis
                    .iter()
                    .position(|b| b.first_one().unwrap() > lead)
                    .unwrap_or(self.basis.len());
                self.basis.insert(pos, r);
                true
            }
        }
    }

    pub fn contains(&self, v: &Bits) -> bool {
        self.reduce(v).is_zero()
    }
}

/// The span of `{χ(f Δ f')}` over all 1-factors `f'`, for a fixed 1-factor
/// `f` of a 1-extendible graph. Since `χ(f1 Δ f2) = χ(f1 Δ f) + χ(f Δ f2)`,
/// the span does not depend on which factor is fixed.
pub fn alternating_space(g: &Graph, f: &EdgeSet, limits: &Limits) -> Result<Gf2Space> {
    if !matchings::is_one_extendible(g) {
        return Err(Error::NotOneExtendible);
    }
    if !matchings::is_one_factor(g, f) {
        return Err(Error::NotAFactor);
    }
    let mut space = Gf2Space::new(g.edge_count());
    for other in matchings::perfect_matchings(g, limits)? {
        let diff: EdgeSet = f.symmetric_difference(&other).cloned().collect();
        space.insert(&edge_indicator(g, &diff));
    }
    Ok(space)
}

/// How far the alternating space falls short of the cycle space. Every ear
/// decomposition needs at least this many double-ear steps, and some
/// decomposition attains it.
pub fn two_ear_lower_bound(g: &Graph, f: &EdgeSet, limits: &Limits) -> Result<usize> {
    let a = alternating_space(g, f, limits)?;
    Ok(cycle_space_dim(g) - a.dim())
}

/// One step of an ear decomposition: the odd ears adjoined (one or two) and
/// the alternating circuit whose arcs they are.
#[derive(Debug, Clone)]
pub struct EarStep {
    pub ears: Vec<Path>,
    pub circuit: Circuit,
}

/// A chain of 1-extendible subgraphs from a single factor edge up to the
/// whole graph. Every stage keeps the host's vertex numbering (vertices not
/// yet reached are isolated), and one factor guides all steps.
#[derive(Debug, Clone)]
pub struct EarDecomposition {
    pub factor: EdgeSet,
    pub stages: Vec<Graph>,
    pub steps: Vec<EarStep>,
}

impl EarDecomposition {
    /// Total number of ears over all steps; always the cycle space dimension.
    pub fn ear_count(&self) -> usize {
        self.steps.iter().map(|s| s.ears.len()).sum()
    }

    pub fn two_ear_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.ears.len() == 2).count()
    }
}

/// The arcs of `c` outside the stage `h`, provided there are one or two and
/// the circuit both touches the stage's support and leaves it. Alternation
/// guarantees the circuit then uses a stage edge at every support vertex it
/// meets, so each run is a proper odd path with fresh interior.
fn usable_arcs(h: &Graph, eh: &EdgeSet, c: &Circuit) -> Option<Vec<Path>> {
    if !c.verts().iter().any(|&v| h.degree(v) > 0) {
        return None;
    }
    if c.edges().iter().all(|e| eh.contains(e)) {
        return None;
    }
    let arcs = c.arcs_outside(eh);
    if arcs.len() > 2 {
        return None;
    }
    debug_assert!(arcs.iter().all(|p| {
        p.len() % 2 == 1
            && h.degree(p.first()) > 0
            && h.degree(p.last()) > 0
            && p.verts()[1..p.verts().len() - 1]
                .iter()
                .all(|&v| h.degree(v) == 0)
    }));
    debug_assert!(
        arcs.len() < 2
            || arcs[0]
                .verts()
                .iter()
                .all(|v| !arcs[1].verts().contains(v))
    );
    Some(arcs)
}

/// Pick the best extension of the stage `h` from `circuits`: fewest arcs
/// first (one before two), then the canonically least circuit.
fn best_adjunction(h: &Graph, circuits: &[Circuit]) -> Option<(Circuit, Vec<Path>)> {
    let eh = h.edge_set();
    let mut best: Option<(Circuit, Vec<Path>)> = None;
    for c in circuits {
        let Some(arcs) = usable_arcs(h, &eh, c) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some((bc, ba)) => (arcs.len(), c) < (ba.len(), bc),
        };
        if better {
            best = Some((c.clone(), arcs));
        }
    }
    best
}

/// Find an `f`-alternating circuit of `g` with exactly one or two arcs
/// outside the subgraph `h`, preferring a single arc. Its arcs are odd ears
/// of `h`, and adjoining them keeps the stage 1-extendible.
///
/// Preconditions: `h` is a proper 1-extendible subgraph of `g` stored with
/// `g`'s vertex count, and `f ∩ E(h)` is a 1-factor of `h`'s support.
pub fn find_ear_adjunction(g: &Graph, h: &Graph, f: &EdgeSet, limits: &Limits) -> Result<Circuit> {
    let circuits = matchings::alternating_circuits_wrt(g, f, limits)?;
    match best_adjunction(h, &circuits) {
        Some((c, _)) => Ok(c),
        None => Err(internal!(
            "no alternating circuit with one or two arcs extends the subgraph"
        )),
    }
}

/// Build an ear decomposition: start from one edge of the lexicographically
/// least 1-factor and repeatedly adjoin the arcs of an alternating circuit
/// with one or two arcs outside the current stage, until the whole graph is
/// reached. Single arcs are preferred at every step.
pub fn ear_decomposition(g: &Graph, limits: &Limits) -> Result<EarDecomposition> {
    if !matchings::is_one_extendible(g) {
        return Err(Error::NotOneExtendible);
    }
    let f = matchings::lex_least_factor(g)?;
    let circuits = matchings::alternating_circuits_wrt(g, &f, limits)?;
    let first: EdgeSet = [*f.iter().next().unwrap()].into_iter().collect();
    let mut stage = g.edge_subgraph(&first);
    let mut stages = vec![stage.clone()];
    let mut steps = Vec::new();
    while stage.edge_count() < g.edge_count() {
        let Some((c, arcs)) = best_adjunction(&stage, &circuits) else {
            return Err(internal!(
                "no alternating circuit with one or two arcs extends the subgraph"
            ));
        };
        let mut grown = stage.edge_set();
        for p in &arcs {
            grown.extend(p.edges());
        }
        stage = g.edge_subgraph(&grown);
        debug_assert!(matchings::is_one_extendible_on_support(&stage));
        stages.push(stage.clone());
        steps.push(EarStep { ears: arcs, circuit: c });
    }
    let d = EarDecomposition { factor: f, stages, steps };
    debug_assert_eq!(d.ear_count(), cycle_space_dim(g));
    Ok(d)
}

/// Check every structural invariant of an ear decomposition against its host
/// graph: stages grow from a single factor edge to the whole graph, stay
/// 1-extendible on their support, and each step adjoins exactly the arcs of
/// its alternating circuit as disjoint odd ears.
pub fn verify_ear_decomposition(g: &Graph, d: &EarDecomposition) -> bool {
    if !matchings::is_one_factor(g, &d.factor) {
        return false;
    }
    if d.stages.len() != d.steps.len() + 1 || d.stages.is_empty() {
        return false;
    }
    let first = &d.stages[0];
    if first.edge_count() != 1 || !d.factor.is_superset(&first.edge_set()) {
        return false;
    }
    if d.stages.last().unwrap().edge_set() != g.edge_set() {
        return false;
    }
    for s in &d.stages {
        if s.vertex_count() != g.vertex_count()
            || !s.edge_set().iter().all(|e| g.has(*e))
            || !matchings::is_one_extendible_on_support(s)
        {
            return false;
        }
    }
    for (i, step) in d.steps.iter().enumerate() {
        let h = &d.stages[i];
        let eh = h.edge_set();
        if !matchings::is_alternating(&step.circuit, &d.factor) {
            return false;
        }
        if step.circuit.edges().iter().all(|e| eh.contains(e)) {
            return false;
        }
        if !step.circuit.edges().iter().any(|e| eh.contains(e)) {
            return false;
        }
        let arcs = step.circuit.arcs_outside(&eh);
        if !(1..=2).contains(&arcs.len()) || arcs.len() != step.ears.len() {
            return false;
        }
        let mut want: Vec<EdgeSet> = step.ears.iter().map(|p| p.edge_set()).collect();
        let mut got: Vec<EdgeSet> = arcs.iter().map(|p| p.edge_set()).collect();
        want.sort();
        got.sort();
        if want != got {
            return false;
        }
        for p in &step.ears {
            let interior = &p.verts()[1..p.verts().len() - 1];
            if p.len() % 2 == 0
                || h.degree(p.first()) == 0
                || h.degree(p.last()) == 0
                || interior.iter().any(|&v| h.degree(v) > 0)
            {
                return false;
            }
        }
        if step.ears.len() == 2
            && step.ears[0]
                .verts()
                .iter()
                .any(|v| step.ears[1].verts().contains(v))
        {
            return false;
        }
        let mut grown = eh.clone();
        for p in &step.ears {
            grown.extend(p.edges());
        }
        if d.stages[i + 1].edge_set() != grown {
            return false;
        }
    }
    true
}

/// The minimum number of double-ear steps over all ear decompositions.
///
/// The gap `cycle_space_dim - alternating_space dim` is a lower bound: each
/// step enlarges the alternating space by at least one dimension, so with
/// `t` steps and `s` double steps, `dim C = t + s <= dim A + s`. A
/// backtracking search then exhibits a decomposition attaining the gap.
pub fn min_two_ear_count(g: &Graph, limits: &Limits) -> Result<usize> {
    if !matchings::is_one_extendible(g) {
        return Err(Error::NotOneExtendible);
    }
    let f = matchings::lex_least_factor(g)?;
    let bound = two_ear_lower_bound(g, &f, limits)?;
    let circuits = matchings::alternating_circuits_wrt(g, &f, limits)?;
    let first: EdgeSet = [*f.iter().next().unwrap()].into_iter().collect();
    let start = g.edge_subgraph(&first);
    let mut seen: HashSet<(Vec<Edge>, usize)> = HashSet::new();
    let mut nodes: u64 = 0;
    if reach_full(
        g,
        &circuits,
        &start,
        bound,
        &mut seen,
        &mut nodes,
        limits.max_search_nodes,
    )? {
        Ok(bound)
    } else {
        Err(internal!(
            "no ear decomposition attains the double-ear lower bound"
        ))
    }
}

// Depth-first search for a decomposition using at most `budget` double-ear
// steps, memoising failed (stage, budget) states.
fn reach_full(
    g: &Graph,
    circuits: &[Circuit],
    stage: &Graph,
    budget: usize,
    seen: &mut HashSet<(Vec<Edge>, usize)>,
    nodes: &mut u64,
    cap: u64,
) -> Result<bool> {
    if stage.edge_count() == g.edge_count() {
        return Ok(true);
    }
    let key = (stage.edges().to_vec(), budget);
    if seen.contains(&key) {
        return Ok(false);
    }
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::EnumerationCapExceeded("ear decomposition search"));
    }
    let eh = stage.edge_set();
    let mut options: Vec<(usize, EdgeSet)> = Vec::new();
    for c in circuits {
        let Some(arcs) = usable_arcs(stage, &eh, c) else {
            continue;
        };
        let cost = arcs.len() - 1;
        if cost > budget {
            continue;
        }
        let mut grown = eh.clone();
        for p in &arcs {
            grown.extend(p.edges());
        }
        options.push((cost, grown));
    }
    options.sort();
    options.dedup();
    for (cost, grown) in options {
        let next = g.edge_subgraph(&grown);
        if reach_full(g, circuits, &next, budget - cost, seen, nodes, cap)? {
            return Ok(true);
        }
    }
    seen.insert(key);
    Ok(false)
}

/// Does removing any two distinct vertices leave a perfect matching?
/// The vertex count must be even.
pub fn is_bicritical(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Err(Error::OddOrder);
    }
    if n < 2 {
        return Ok(false);
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !matchings::has_matching_avoiding(g, &[u, v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn odd_components_without(g: &Graph, s: &BTreeSet<usize>) -> usize {
    let alive: Vec<bool> = (0..g.vertex_count()).map(|v| !s.contains(&v)).collect();
    g.components_among(&alive)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

fn is_barrier(g: &Graph, s: &BTreeSet<usize>) -> bool {
    s.len() >= 2 && odd_components_without(g, s) == s.len()
}

/// An inclusion-maximal barrier: a set `S` of at least two vertices whose
/// removal leaves exactly `|S|` odd components. Scans vertex sets in
/// increasing size (then lexicographic) order and grows the first hit
/// greedily, lowest vertex first. Bicritical graphs have none.
pub fn maximal_barrier(g: &Graph) -> Result<BTreeSet<usize>> {
    let n = g.vertex_count();
    let mut found: Option<BTreeSet<usize>> = None;
    'outer: for size in 2..=n {
        for combo in (0..n).combinations(size) {
            let s: BTreeSet<usize> = combo.into_iter().collect();
            if is_barrier(g, &s) {
                found = Some(s);
                break 'outer;
            }
        }
    }
    let Some(mut s) = found else {
        return Err(Error::IsBicritical);
    };
    // In a graph with a perfect matching no removal beats |S| odd
    // components, so growing one vertex at a time cannot overshoot; a
    // fixpoint in particular leaves no even component behind.
    loop {
        let ext = (0..n).find(|&v| {
            !s.contains(&v) && {
                let mut t = s.clone();
                t.insert(v);
                is_barrier(g, &t)
            }
        });
        match ext {
            Some(v) => {
                s.insert(v);
            }
            None => break,
        }
    }
    Ok(s)
}

/// Node of the decomposition tree produced by [`brick_decompose`].
#[derive(Debug, Clone)]
pub enum DecompositionTree {
    /// A 3-connected bicritical leaf.
    Brick(Graph),
    /// A single-edge leaf (a piece that collapsed to one edge).
    K2(Graph),
    /// The bipartite graph left by contracting every odd component at a
    /// barrier split. Kept as a leaf; not decomposed further.
    Frame(Graph),
    /// A non-bicritical graph split along a maximal barrier. Children are
    /// the frame followed by one piece per odd component (the rest of the
    /// graph contracted to a single vertex).
    Barrier {
        graph: Graph,
        barrier: BTreeSet<usize>,
        children: Vec<DecompositionTree>,
    },
    /// A bicritical but not 3-connected graph split at a 2-vertex cut.
    /// Children are the components of the cut's removal, each keeping the
    /// two cut vertices together with the edge between them.
    TwoCut {
        graph: Graph,
        cut: (usize, usize),
        children: Vec<DecompositionTree>,
    },
}

impl DecompositionTree {
    /// All brick leaves, in depth-first order.
    pub fn bricks(&self) -> Vec<&Graph> {
        let mut out = Vec::new();
        self.collect_bricks(&mut out);
        out
    }

    fn collect_bricks<'a>(&'a self, out: &mut Vec<&'a Graph>) {
        match self {
            DecompositionTree::Brick(g) => out.push(g),
            DecompositionTree::K2(_) | DecompositionTree::Frame(_) => {}
            DecompositionTree::Barrier { children, .. }
            | DecompositionTree::TwoCut { children, .. } => {
                for c in children {
                    c.collect_bricks(out);
                }
            }
        }
    }
}

/// Decompose a 1-extendible graph into bricks: split along maximal barriers
/// while the graph is not bicritical, then at 2-vertex cuts until every
/// remaining piece is 3-connected. Returns the bricks (in tree order) and
/// the full tree.
pub fn brick_decompose(g: &Graph, limits: &Limits) -> Result<(Vec<Graph>, DecompositionTree)> {
    if !matchings::is_one_extendible(g) {
        return Err(Error::NotOneExtendible);
    }
    let tree = decompose_node(g, limits)?;
    let bricks = tree.bricks().into_iter().cloned().collect();
    Ok((bricks, tree))
}

fn decompose_node(g: &Graph, limits: &Limits) -> Result<DecompositionTree> {
    if g.vertex_count() == 2 {
        return Ok(DecompositionTree::K2(g.clone()));
    }
    if !is_bicritical(g)? {
        let barrier = maximal_barrier(g)?;
        let (frame, pieces) = barrier_split(g, &barrier)?;
        let mut children = vec![DecompositionTree::Frame(frame)];
        for p in pieces {
            children.push(decompose_node(&p, limits)?);
        }
        return Ok(DecompositionTree::Barrier {
            graph: g.clone(),
            barrier,
            children,
        });
    }
    if g.is_three_connected()? {
        return Ok(DecompositionTree::Brick(g.clone()));
    }
    let (u, v) = g.find_two_cut().ok_or_else(|| {
        internal!("bicritical graph without a 2-cut should have been 3-connected")
    })?;
    let mut children = Vec::new();
    for p in two_cut_split(g, u, v) {
        children.push(decompose_node(&p, limits)?);
    }
    Ok(DecompositionTree::TwoCut {
        graph: g.clone(),
        cut: (u, v),
        children,
    })
}

/// Split at a barrier: contract each odd component of `g - s` to a single
/// vertex for the frame, and for each odd component contract everything
/// else to a single vertex for its piece.
fn barrier_split(g: &Graph, s: &BTreeSet<usize>) -> Result<(Graph, Vec<Graph>)> {
    let alive: Vec<bool> = (0..g.vertex_count()).map(|v| !s.contains(&v)).collect();
    let comps = g.components_among(&alive);
    debug_assert!(comps.iter().all(|c| c.len() % 2 == 1));
    let mut frame = g.clone();
    let mut pending: Vec<Vec<usize>> = comps.clone();
    while let Some(comp) = pending.pop() {
        let set: BTreeSet<usize> = comp.into_iter().collect();
        let con = frame.contract_vertex_set(&set).map_err(internal_split)?;
        pending = pending
            .iter()
            .map(|c| c.iter().map(|&v| con.vertex_map[v]).collect())
            .collect();
        frame = con.graph;
    }
    let mut pieces = Vec::new();
    for comp in &comps {
        let others: BTreeSet<usize> = (0..g.vertex_count())
            .filter(|v| !comp.contains(v))
            .collect();
        let con = g.contract_vertex_set(&others).map_err(internal_split)?;
        pieces.push(con.graph);
    }
    Ok((frame, pieces))
}

// A failed split contraction signals a broken structural invariant, not bad
// user input.
fn internal_split(e: Error) -> Error {
    internal!("split contraction failed: {e}")
}

/// Split a bicritical graph at the 2-cut `{u, v}`: one piece per component
/// of `g - {u, v}`, keeping `u` and `v` (renumbered in vertex order) and
/// adding the edge between them if missing.
fn two_cut_split(g: &Graph, u: usize, v: usize) -> Vec<Graph> {
    let alive: Vec<bool> = (0..g.vertex_count()).map(|w| w != u && w != v).collect();
    let mut pieces = Vec::new();
    for comp in g.components_among(&alive) {
        let mut keep = comp.clone();
        keep.push(u);
        keep.push(v);
        keep.sort_unstable();
        let index = |w: usize| keep.binary_search(&w).unwrap();
        let mut edges: EdgeSet = g
            .edges()
            .iter()
            .filter(|e| keep.binary_search(&e.u).is_ok() && keep.binary_search(&e.v).is_ok())
            .map(|e| Edge::new(index(e.u), index(e.v)))
            .collect();
        edges.insert(Edge::new(index(u), index(v)));
        pieces.push(Graph::from_edge_set(keep.len(), &edges));
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn space_dimensions_of_named_graphs() {
        let lim = Limits::default();
        for (g, dim_c, dim_a) in [
            (catalog::k33(), 4, 4),
            (catalog::petersen(), 6, 4),
            (catalog::complete(4), 3, 2),
            (catalog::prism(), 4, 3),
            (catalog::cycle(6), 1, 1),
        ] {
            let f = matchings::lex_least_factor(&g).unwrap();
            assert_eq!(cycle_space_dim(&g), dim_c);
            let a = alternating_space(&g, &f, &lim).unwrap();
            assert_eq!(a.dim(), dim_a);
            assert_eq!(two_ear_lower_bound(&g, &f, &lim).unwrap(), dim_c - dim_a);
            // every factor difference lies in the space, whichever f is used
            for m in matchings::perfect_matchings(&g, &lim).unwrap() {
                let diff: EdgeSet = f.symmetric_difference(&m).cloned().collect();
                assert!(a.contains(&edge_indicator(&g, &diff)));
            }
        }
    }

    #[test]
    fn alternating_space_rejects_bad_inputs() {
        let lim = Limits::default();
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let f: EdgeSet = [Edge::new(0, 1), Edge::new(2, 3)].into_iter().collect();
        assert!(matches!(
            alternating_space(&path, &f, &lim),
            Err(Error::NotOneExtendible)
        ));
        let k4 = catalog::complete(4);
        let not_a_factor: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        assert!(matches!(
            alternating_space(&k4, &not_a_factor, &lim),
            Err(Error::NotAFactor)
        ));
    }

    #[test]
    fn ear_decompositions_of_named_graphs() {
        let lim = Limits::default();
        // (graph, total ears, double-ear steps of the greedy build)
        for (g, ears, twos) in [
            (catalog::cycle(6), 1, 0),
            (catalog::complete(4), 3, 1),
            (catalog::k33(), 4, 0),
            (catalog::prism(), 4, 1),
        ] {
            let d = ear_decomposition(&g, &lim).unwrap();
            assert!(verify_ear_decomposition(&g, &d));
            assert_eq!(d.ear_count(), ears);
            assert_eq!(d.two_ear_steps(), twos);
        }
        // C6 is one five-edge ear over a single edge
        let d = ear_decomposition(&catalog::cycle(6), &lim).unwrap();
        assert_eq!(d.steps.len(), 1);
        assert_eq!(d.steps[0].ears[0].len(), 5);
        // K33 grows by single ears only
        let d = ear_decomposition(&catalog::k33(), &lim).unwrap();
        assert_eq!(d.steps.len(), 4);
        assert!(d.steps.iter().all(|s| s.ears.len() == 1));
        // Petersen: right total, and the build verifies
        let pet = catalog::petersen();
        let d = ear_decomposition(&pet, &lim).unwrap();
        assert!(verify_ear_decomposition(&pet, &d));
        assert_eq!(d.ear_count(), 6);
    }

    #[test]
    fn ear_decomposition_needs_one_extendibility() {
        let lim = Limits::default();
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            ear_decomposition(&path, &lim),
            Err(Error::NotOneExtendible)
        ));
    }

    #[test]
    fn ear_adjunction_prefers_single_arcs() {
        let lim = Limits::default();
        let k4 = catalog::complete(4);
        let f = matchings::lex_least_factor(&k4).unwrap();
        // from a lone edge a single long arc exists
        let start: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        let h = k4.edge_subgraph(&start);
        let c = find_ear_adjunction(&k4, &h, &f, &lim).unwrap();
        assert_eq!(c.arcs_outside(&h.edge_set()).len(), 1);
        // from the 4-circuit only the two chords remain: two arcs
        let quad: EdgeSet = [(0, 1), (1, 2), (2, 3), (0, 3)]
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect();
        let h = k4.edge_subgraph(&quad);
        let c = find_ear_adjunction(&k4, &h, &f, &lim).unwrap();
        let arcs = c.arcs_outside(&h.edge_set());
        assert_eq!(arcs.len(), 2);
        assert!(arcs.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn minimum_double_ear_counts() {
        let lim = Limits::default();
        for (g, want) in [
            (catalog::cycle(6), 0),
            (catalog::k33(), 0),
            (catalog::complete(4), 1),
            (catalog::prism(), 1),
            (catalog::petersen(), 2),
        ] {
            assert_eq!(min_two_ear_count(&g, &lim).unwrap(), want);
        }
    }

    #[test]
    fn bicriticality() {
        assert!(is_bicritical(&catalog::complete(4)).unwrap());
        assert!(is_bicritical(&catalog::petersen()).unwrap());
        assert!(is_bicritical(&catalog::prism()).unwrap());
        // bipartite graphs never are: remove two vertices of one colour class
        assert!(!is_bicritical(&catalog::k33()).unwrap());
        assert!(!is_bicritical(&catalog::cycle(6)).unwrap());
        assert!(matches!(
            is_bicritical(&catalog::cycle(5)),
            Err(Error::OddOrder)
        ));
    }

    #[test]
    fn maximal_barriers() {
        let s = maximal_barrier(&catalog::cycle(6)).unwrap();
        assert_eq!(s, [0, 2, 4].into_iter().collect());
        let s = maximal_barrier(&catalog::cycle(4)).unwrap();
        assert_eq!(s, [0, 2].into_iter().collect());
        assert!(matches!(
            maximal_barrier(&catalog::complete(4)),
            Err(Error::IsBicritical)
        ));
    }

    #[test]
    fn brick_decompositions_of_named_graphs() {
        let lim = Limits::default();
        // bricks stay whole
        for g in [catalog::complete(4), catalog::petersen(), catalog::prism()] {
            let (bricks, tree) = brick_decompose(&g, &lim).unwrap();
            assert_eq!(bricks.len(), 1);
            assert_eq!(bricks[0].edge_set(), g.edge_set());
            assert!(matches!(tree, DecompositionTree::Brick(_)));
        }
        // bipartite graphs decompose into a frame and single edges
        let c6 = catalog::cycle(6);
        let (bricks, tree) = brick_decompose(&c6, &lim).unwrap();
        assert!(bricks.is_empty());
        let DecompositionTree::Barrier {
            barrier, children, ..
        } = tree
        else {
            panic!("expected a barrier split");
        };
        assert_eq!(barrier, [0, 2, 4].into_iter().collect());
        assert_eq!(children.len(), 4);
        assert!(matches!(&children[0], DecompositionTree::Frame(fr)
            if fr.edge_count() == 6 && fr.vertex_count() == 6));
        assert!(children[1..]
            .iter()
            .all(|c| matches!(c, DecompositionTree::K2(_))));
    }

    #[test]
    fn brick_decomposition_requires_one_extendibility() {
        let lim = Limits::default();
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            brick_decompose(&path, &lim),
            Err(Error::NotOneExtendible)
        ));
    }
}
