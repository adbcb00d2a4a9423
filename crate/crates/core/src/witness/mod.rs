//! Structural certificates of non-Pfaffian-ness.
//!
//! The certificate produced here is a subgraph `H` of the input graph that
//! can be turned into an even subdivision of K3,3 by contracting the odd
//! circuits listed in `contraction_stack` (often none), together with a
//! perfect matching of everything outside `H`. Such a subgraph rules out a
//! Pfaffian orientation of the whole graph, and all the data is cheap to
//! re-check, so verification never has to trust the search that found it.
//!
//! The submodules build these certificates for graphs presented as a
//! bipartite core plus two independent chords: `two_ear` validates and
//! generates such presentations, `refine` whittles a pair of oppositely
//! oriented alternating circuits down to a normal form, and `cascade` runs
//! the chain-of-circuits argument that finally pins down `H`.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::path::{Circuit, Path};
use crate::graph::{is_even_subdivision_of_k33, EdgeSet, Graph};
use crate::internal;
use crate::limits::Limits;
use crate::matchings::complementary_factor_exists;

mod cascade;
mod refine;
mod two_ear;

pub use cascade::{build_cascade, extract_witness, normalize_trace, trace_of, Cascade, Trace};
pub use refine::{contact_ordering_check, refine_pair};
pub use two_ear::{
    decide_two_ear_extension, generate_two_ear_instances, TwoEarInstance, TwoEarVerdict,
};

/// Certificate that a graph has no Pfaffian orientation.
///
/// `h` is a subgraph of the host graph. Contracting the circuits in
/// `contraction_stack` one after another (each listed in the coordinates left
/// behind by the previous contraction) turns `h` into an even subdivision of
/// K3,3, and `complement_factor` perfectly matches every vertex of the host
/// graph outside `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K33Witness {
    pub h: EdgeSet,
    pub contraction_stack: Vec<Circuit>,
    pub complement_factor: EdgeSet,
}

impl K33Witness {
    /// Vertices spanned by the subgraph `h`.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.h.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    /// The single contracted odd circuit, when the witness needs exactly one.
    pub fn odd_circuit(&self) -> Option<&Circuit> {
        if self.contraction_stack.len() == 1 {
            Some(&self.contraction_stack[0])
        } else {
            None
        }
    }
}

/// Re-check a witness from scratch against the host graph.
pub fn verify_k33_witness(g: &Graph, w: &K33Witness) -> bool {
    if !w.h.iter().all(|&e| g.has(e)) {
        return false;
    }
    let h_verts = w.vertices();
    // The complement factor must be a perfect matching of g - V(h).
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    for &e in &w.complement_factor {
        if !g.has(e) || h_verts.contains(&e.u) || h_verts.contains(&e.v) {
            return false;
        }
        if !covered.insert(e.u) || !covered.insert(e.v) {
            return false;
        }
    }
    if covered.len() != g.vertex_count() - h_verts.len() {
        return false;
    }
    // Fold the contraction stack over h, then recognise the result.
    let mut cur = g.edge_subgraph(&w.h);
    for x in &w.contraction_stack {
        if x.is_empty() || x.is_even() {
            return false;
        }
        if !x.edges().iter().all(|&e| cur.has(e)) {
            return false;
        }
        let verts: BTreeSet<usize> = x.verts().iter().cloned().collect();
        match cur.contract_vertex_set(&verts) {
            Ok(c) => cur = c.graph,
            Err(_) => return false,
        }
    }
    is_even_subdivision_of_k33(&cur)
}

/// Find an even subdivision of K3,3 whose removal leaves a perfectly
/// matchable rest, or report (exhaustively) that none exists.
pub fn find_even_k33_with_complement(g: &Graph, limits: &Limits) -> Result<Option<K33Witness>> {
    Ok(search_even_subdivision(g, g, None, limits)?.map(|(h, fc)| K33Witness {
        h,
        contraction_stack: Vec::new(),
        complement_factor: fc,
    }))
}

/// Like [`find_even_k33_with_complement`], but also allows one odd circuit to
/// be contracted first. Tries the contraction-free search before scanning odd
/// circuits in canonical order.
pub fn find_reducible_k33_witness(g: &Graph, limits: &Limits) -> Result<Option<K33Witness>> {
    search_structures(g, None, limits)
}

/// Direct-or-one-contraction witness search, optionally confined to a set of
/// candidate edges. Branch vertices, subdivision paths and the contracted odd
/// circuit are all drawn from `allowed` when given; the complement factor is
/// always taken from the whole graph, so a hit is a genuine witness for `g`.
pub(crate) fn search_structures(
    g: &Graph,
    allowed: Option<&EdgeSet>,
    limits: &Limits,
) -> Result<Option<K33Witness>> {
    let restricted;
    let ga = match allowed {
        Some(s) => {
            restricted = g.edge_subgraph(s);
            &restricted
        }
        None => g,
    };
    if let Some((h, fc)) = search_even_subdivision(ga, g, None, limits)? {
        return Ok(Some(K33Witness {
            h,
            contraction_stack: Vec::new(),
            complement_factor: fc,
        }));
    }
    let mut odd: Vec<Circuit> = simple_circuits(ga, limits)?
        .into_iter()
        .filter(|c| !c.is_even())
        .collect();
    odd.sort();
    for x in odd {
        let verts: BTreeSet<usize> = x.verts().iter().cloned().collect();
        let con = g
            .contract_vertex_set(&verts)
            .map_err(|e| internal!("contracting an enumerated circuit failed: {e}"))?;
        let shrunk;
        let cga = match allowed {
            Some(s) => {
                let mapped: EdgeSet = s.iter().filter_map(|&e| con.map_edge(e)).collect();
                shrunk = con.graph.edge_subgraph(&mapped);
                &shrunk
            }
            None => &con.graph,
        };
        // The merged vertex must end up inside the subdivision, otherwise the
        // contraction did no work and the direct search would have found it.
        if let Some((h2, fc2)) = search_even_subdivision(cga, &con.graph, Some(con.vertex), limits)? {
            let mut h = x.edge_set();
            for &e in &h2 {
                h.insert(
                    con.least_preimage(e)
                        .ok_or_else(|| internal!("contracted edge {e:?} has no preimage"))?,
                );
            }
            let mut fc = EdgeSet::new();
            for &e in &fc2 {
                fc.insert(
                    con.least_preimage(e)
                        .ok_or_else(|| internal!("complement edge {e:?} has no preimage"))?,
                );
            }
            let w = K33Witness {
                h,
                contraction_stack: vec![x],
                complement_factor: fc,
            };
            debug_assert!(verify_k33_witness(g, &w));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// All simple circuits of `g`, canonically represented. Each circuit is
/// reported once (direction and rotation are normalised by `Circuit`).
fn simple_circuits(g: &Graph, limits: &Limits) -> Result<Vec<Circuit>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut nodes = 0u64;
    for root in 0..n {
        let mut path = vec![root];
        let mut on_path = vec![false; n];
        on_path[root] = true;
        circuit_dfs(g, root, &mut path, &mut on_path, &mut nodes, limits, &mut out)?;
    }
    Ok(out)
}

// Rooted cycle search: only vertices above the root may join the path, so a
// cycle is generated exactly at its least vertex; `path[1] < v` at closing
// time picks one of the two traversal directions.
fn circuit_dfs(
    g: &Graph,
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    nodes: &mut u64,
    limits: &Limits,
    out: &mut Vec<Circuit>,
) -> Result<()> {
    *nodes += 1;
    if *nodes > limits.max_search_nodes {
        return Err(Error::EnumerationCapExceeded("circuit enumeration"));
    }
    let v = *path.last().unwrap();
    for &w in g.neighbors(v) {
        if w == root && path.len() >= 3 && path[1] < v {
            if out.len() as u64 >= limits.max_circuits {
                return Err(Error::EnumerationCapExceeded("circuit enumeration"));
            }
            out.push(Circuit::from_vertex_cycle(path));
        } else if w > root && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            circuit_dfs(g, root, path, on_path, nodes, limits, out)?;
            on_path[w] = false;
            path.pop();
        }
    }
    Ok(())
}

/// Search for an even subdivision of K3,3 in `g` whose vertex set admits a
/// complementary perfect matching in `full` (`g` itself, or a subgraph of
/// `full` the structure is confined to). When `must_contain` is set, only
/// subdivisions through that vertex count. Returns the subdivision's edges
/// and the complement factor.
fn search_even_subdivision(
    g: &Graph,
    full: &Graph,
    must_contain: Option<usize>,
    limits: &Limits,
) -> Result<Option<(EdgeSet, EdgeSet)>> {
    let branch_candidates: Vec<usize> = g
        .support()
        .into_iter()
        .filter(|&v| g.degree(v) >= 3)
        .collect();
    if branch_candidates.len() < 6 {
        return Ok(None);
    }
    let mut nodes = 0u64;
    // Candidate branch triples. The nine subdivision paths all have odd
    // length, so in a bipartite graph the two triples sit in opposite colour
    // classes; elsewhere every 3+3 split of a 6-subset is in play.
    let splits: Vec<(Vec<usize>, Vec<usize>)> = match g.bipartition() {
        Some(col) => {
            let zeros: Vec<usize> = branch_candidates
                .iter()
                .cloned()
                .filter(|&v| col[v] == 0)
                .collect();
            let ones: Vec<usize> = branch_candidates
                .iter()
                .cloned()
                .filter(|&v| col[v] == 1)
                .collect();
            zeros
                .iter()
                .cloned()
                .combinations(3)
                .cartesian_product(ones.iter().cloned().combinations(3))
                .collect()
        }
        None => {
            let mut splits = Vec::new();
            for six in branch_candidates.iter().cloned().combinations(6) {
                // Keeping six[0] on the left kills the mirrored split.
                for pair in six[1..].iter().cloned().combinations(2) {
                    let left = vec![six[0], pair[0], pair[1]];
                    let right: Vec<usize> =
                        six.iter().cloned().filter(|v| !left.contains(v)).collect();
                    splits.push((left, right));
                }
            }
            splits
        }
    };
    for (left, right) in splits {
        let mut used = vec![false; g.vertex_count()];
        for &v in left.iter().chain(&right) {
            used[v] = true;
        }
        let mut paths: Vec<Path> = Vec::new();
        if let Some(hit) = pack_paths(
            g,
            full,
            &left,
            &right,
            0,
            &mut used,
            &mut paths,
            must_contain,
            &mut nodes,
            limits,
        )? {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

// Assign the nine subdivision paths one pair at a time; path interiors must
// be vertices no earlier path (or branch vertex) has claimed.
#[allow(clippy::too_many_arguments)]
fn pack_paths(
    g: &Graph,
    full: &Graph,
    left: &[usize],
    right: &[usize],
    idx: usize,
    used: &mut [bool],
    paths: &mut Vec<Path>,
    must_contain: Option<usize>,
    nodes: &mut u64,
    limits: &Limits,
) -> Result<Option<(EdgeSet, EdgeSet)>> {
    if idx == 9 {
        let mut h = EdgeSet::new();
        let mut h_verts: BTreeSet<usize> = BTreeSet::new();
        for p in paths.iter() {
            h.extend(p.edge_set());
            h_verts.extend(p.verts().iter().cloned());
        }
        if let Some(v) = must_contain {
            if !h_verts.contains(&v) {
                return Ok(None);
            }
        }
        if let Some(fc) = complementary_factor_exists(full, &h_verts) {
            return Ok(Some((h, fc)));
        }
        return Ok(None);
    }
    let a = left[idx / 3];
    let b = right[idx % 3];
    let mut walk = vec![a];
    grow_path(
        g,
        full,
        b,
        &mut walk,
        left,
        right,
        idx,
        used,
        paths,
        must_contain,
        nodes,
        limits,
    )
}

// Extend one subdivision path towards its target branch vertex. Paths must
// have odd length; interiors are freshly claimed degree-anything vertices.
#[allow(clippy::too_many_arguments)]
fn grow_path(
    g: &Graph,
    full: &Graph,
    target: usize,
    walk: &mut Vec<usize>,
    left: &[usize],
    right: &[usize],
    idx: usize,
    used: &mut [bool],
    paths: &mut Vec<Path>,
    must_contain: Option<usize>,
    nodes: &mut u64,
    limits: &Limits,
) -> Result<Option<(EdgeSet, EdgeSet)>> {
    *nodes += 1;
    if *nodes > limits.max_search_nodes {
        return Err(Error::EnumerationCapExceeded("subdivision path packing"));
    }
    let v = *walk.last().unwrap();
    for &w in g.neighbors(v) {
        if w == target {
            if walk.len() % 2 == 1 {
                // walk has walk.len()-1 edges; adding the closing edge makes
                // walk.len() edges, which must be odd
                walk.push(w);
                paths.push(Path::new(walk.clone()));
                let hit = pack_paths(
                    g,
                    full,
                    left,
                    right,
                    idx + 1,
                    used,
                    paths,
                    must_contain,
                    nodes,
                    limits,
                )?;
                paths.pop();
                walk.pop();
                if hit.is_some() {
                    return Ok(hit);
                }
            }
        } else if !used[w] {
            used[w] = true;
            walk.push(w);
            let hit = grow_path(
                g,
                full,
                target,
                walk,
                left,
                right,
                idx,
                used,
                paths,
                must_contain,
                nodes,
                limits,
            )?;
            walk.pop();
            used[w] = false;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}
