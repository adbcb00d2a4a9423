//! Independent brute-force oracles and instance generators.
//!
//! The verdict-producing functions here recompute everything from first
//! principles: matchings by direct backtracking over the edge list, factor
//! signs by explicit permutation sorting, Pfaffianness by sweeping every
//! orientation, minimum 2-ear counts by blind search over edge subsets.
//! None of it touches the linear-algebra engine, so agreement between the
//! two sides is evidence rather than tautology.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog;
use crate::error::{Error, Result};
use crate::gf2::Bits;
use crate::graph::canon::{invariant_key, is_isomorphic};
use crate::graph::{Edge, Graph};
use crate::matchings;
use crate::pfaffian::Orientation;

// ---- naive matching enumeration ----

fn extend_matchings(
    edges: &[Edge],
    to_cover: &mut BTreeSet<usize>,
    current: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
    first_only: bool,
) -> bool {
    let v = match to_cover.iter().next() {
        None => {
            out.push(current.clone());
            return first_only;
        }
        Some(&v) => v,
    };
    let candidates: Vec<Edge> = edges
        .iter()
        .filter(|e| e.touches(v) && to_cover.contains(&e.other(v)))
        .cloned()
        .collect();
    for e in candidates {
        to_cover.remove(&e.u);
        to_cover.remove(&e.v);
        current.push(e);
        let stop = extend_matchings(edges, to_cover, current, out, first_only);
        current.pop();
        to_cover.insert(e.u);
        to_cover.insert(e.v);
        if stop {
            return true;
        }
    }
    false
}

fn matchings_over(edges: &[Edge], verts: &BTreeSet<usize>, first_only: bool) -> Vec<Vec<Edge>> {
    let mut out = Vec::new();
    if verts.len() % 2 == 1 {
        return out;
    }
    let mut to_cover = verts.clone();
    extend_matchings(edges, &mut to_cover, &mut Vec::new(), &mut out, first_only);
    out
}

/// Every 1-factor of `g`, recomputed without the engine's enumerator.
pub fn naive_perfect_matchings(g: &Graph) -> Vec<Vec<Edge>> {
    let verts: BTreeSet<usize> = (0..g.vertex_count()).collect();
    matchings_over(g.edges(), &verts, false)
}

fn has_matching_over(edges: &[Edge], verts: &BTreeSet<usize>) -> bool {
    !matchings_over(edges, verts, true).is_empty()
}

fn connected_over(edges: &[Edge], verts: &BTreeSet<usize>) -> bool {
    let start = match verts.iter().next() {
        None => return false,
        Some(&v) => v,
    };
    let mut seen: BTreeSet<usize> = [start].into();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in edges.iter().filter(|e| e.touches(v)) {
            let w = e.other(v);
            if verts.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}

/// 1-extendibility of the subgraph formed by an edge list, from scratch:
/// connected on its support, and every edge lies in a perfect matching of
/// the support.
fn one_extendible_over(edges: &[Edge]) -> bool {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
    if verts.is_empty() || verts.len() % 2 == 1 || !connected_over(edges, &verts) {
        return false;
    }
    edges.iter().all(|e| {
        let mut rest = verts.clone();
        rest.remove(&e.u);
        rest.remove(&e.v);
        has_matching_over(edges, &rest)
    })
}

// ---- factor signs and the orientation sweep ----

fn directed_sequence(g: &Graph, o: &Orientation, f: &[Edge]) -> Vec<usize> {
    let mut s = Vec::with_capacity(2 * f.len());
    for &e in f {
        let (t, h) = o.direction(g, e);
        s.push(t);
        s.push(h);
    }
    s
}

/// Sign of a 1-factor relative to a reference, by literally sorting one
/// vertex sequence into the other and counting the swaps.
pub fn naive_factor_sign(g: &Graph, o: &Orientation, reference: &[Edge], f: &[Edge]) -> i8 {
    let want = directed_sequence(g, o, reference);
    let mut have = directed_sequence(g, o, f);
    let mut swaps = 0usize;
    for i in 0..want.len() {
        let j = have.iter().position(|&x| x == want[i]).expect("same vertex set");
        if j != i {
            have.swap(i, j);
            swaps += 1;
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Do all 1-factors carry the same sign under this orientation? Recomputed
/// naively (no circuit machinery).
pub fn signs_all_equal(g: &Graph, o: &Orientation) -> Result<bool> {
    let factors = naive_perfect_matchings(g);
    let reference = factors.first().ok_or(Error::NoFactor)?;
    Ok(factors
        .iter()
        .all(|f| naive_factor_sign(g, o, reference, f) == 1))
}

struct SignSweep {
    // per factor: edge-membership mask and sign under the ascending
    // orientation, as a parity bit
    masks: Vec<u32>,
    base: Vec<u8>,
}

impl SignSweep {
    fn new(g: &Graph, factors: &[Vec<Edge>]) -> SignSweep {
        let ascending = Orientation::all_ascending(g);
        let reference = &factors[0];
        let masks = factors
            .iter()
            .map(|f| {
                let mut mask = 0u32;
                for &e in f {
                    mask |= 1 << g.edge_index(e).expect("factor edge in graph");
                }
                mask
            })
            .collect();
        let base = factors
            .iter()
            .map(|f| {
                if naive_factor_sign(g, &ascending, reference, f) == 1 {
                    0u8
                } else {
                    1u8
                }
            })
            .collect();
        SignSweep { masks, base }
    }

    // Reversing one edge swaps its head and tail in the sequence of every
    // factor containing it — one transposition — so under orientation word
    // w the sign parity of factor i is base[i] ^ |w & mask[i]|.
    fn word_equalizes(&self, w: u32) -> bool {
        let s0 = (w & self.masks[0]).count_ones() as u8 & 1;
        self.masks
            .iter()
            .zip(&self.base)
            .all(|(&mk, &b)| b ^ ((w & mk).count_ones() as u8 & 1) == s0)
    }
}

/// Does some orientation of `g` give all 1-factors the same sign? Sweeps
/// all 2^|E| orientations with early exit.
pub fn brute_force_pfaffian(g: &Graph) -> Result<bool> {
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::TooLarge("orientation sweep"));
    }
    let factors = naive_perfect_matchings(g);
    if factors.len() <= 1 {
        return Ok(true);
    }
    let sweep = SignSweep::new(g, &factors);
    Ok((0u32..1 << m)
        .into_par_iter()
        .any(|w| sweep.word_equalizes(w)))
}

// ---- minimum 2-ear count by blind search ----

fn edges_of_mask(g: &Graph, mask: u32) -> Vec<Edge> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| *e)
        .collect()
}

// All odd ears attachable to the stage `mask`: simple paths over absent
// edges with endpoints on the stage and interior off it. Returned as
// (edge bits, vertex bits including endpoints).
fn ears_of_stage(g: &Graph, mask: u32) -> Vec<(u32, u32)> {
    let mut stage_verts = 0u32;
    for (i, e) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            stage_verts |= 1 << e.u | 1 << e.v;
        }
    }
    let mut found: BTreeSet<(u32, u32)> = BTreeSet::new();
    // iterative DFS over (current vertex, used edge bits, used vertex bits)
    for start in 0..g.vertex_count() {
        if stage_verts >> start & 1 == 0 {
            continue;
        }
        let mut stack = vec![(start, 0u32, 1u32 << start)];
        while let Some((cur, eb, vb)) = stack.pop() {
            for &w in g.neighbors(cur) {
                let i = g.edge_index(Edge::new(cur, w)).unwrap();
                if mask >> i & 1 == 1 || eb >> i & 1 == 1 {
                    continue;
                }
                if stage_verts >> w & 1 == 1 {
                    // path ends on the stage; endpoints must differ and the
                    // length must be odd
                    if w != start && (eb | 1 << i).count_ones() % 2 == 1 {
                        found.insert(((eb | 1 << i), vb | 1 << w));
                    }
                } else if vb >> w & 1 == 0 {
                    stack.push((w, eb | 1 << i, vb | 1 << w));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Minimum number of 2-ear steps over all ways to grow `g` from a single
/// edge by attaching one or two vertex-disjoint odd ears at a time, with
/// every stage 1-extendible. Blind 0/1-weighted breadth-first search over
/// edge subsets; nothing here knows about cycle spaces.
pub fn exhaustive_decompositions(g: &Graph) -> Result<usize> {
    let m = g.edge_count();
    if m > 12 {
        return Err(Error::TooLarge("decomposition search"));
    }
    if !one_extendible_over(g.edges()) {
        return Err(Error::NotOneExtendible);
    }
    let full: u32 = (1 << m) - 1;
    let mut valid: Vec<Option<bool>> = vec![None; 1 << m];
    let check = |mask: u32, valid: &mut Vec<Option<bool>>| -> bool {
        if valid[mask as usize].is_none() {
            valid[mask as usize] = Some(one_extendible_over(&edges_of_mask(g, mask)));
        }
        valid[mask as usize].unwrap()
    };
    let mut best = vec![usize::MAX; 1 << m];
    let mut deque: VecDeque<(usize, u32)> = VecDeque::new();
    for i in 0..m {
        best[1 << i] = 0;
        deque.push_back((0, 1 << i));
    }
    while let Some((cost, mask)) = deque.pop_front() {
        if cost > best[mask as usize] {
            continue;
        }
        if mask == full {
            return Ok(cost);
        }
        let ears = ears_of_stage(g, mask);
        for &(eb, _) in &ears {
            let next = mask | eb;
            if best[next as usize] > cost && check(next, &mut valid) {
                best[next as usize] = cost;
                deque.push_front((cost, next));
            }
        }
        for i in 0..ears.len() {
            for j in (i + 1)..ears.len() {
                if ears[i].1 & ears[j].1 != 0 {
                    continue; // the two ears must be vertex-disjoint
                }
                let next = mask | ears[i].0 | ears[j].0;
                if best[next as usize] > cost + 1 && check(next, &mut valid) {
                    best[next as usize] = cost + 1;
                    deque.push_back((cost + 1, next));
                }
            }
        }
    }
    Err(crate::internal!("no ear decomposition reaches the full graph"))
}

// ---- exhaustive universes ----

struct IsoStore {
    graphs: Vec<Graph>,
    buckets: HashMap<(usize, usize, Vec<usize>), Vec<usize>>,
}

impl IsoStore {
    fn new() -> IsoStore {
        IsoStore {
            graphs: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    // true if the graph was new
    fn insert(&mut self, g: Graph) -> bool {
        let ids = self.buckets.entry(invariant_key(&g)).or_default();
        if ids.iter().any(|&i| is_isomorphic(&self.graphs[i], &g)) {
            return false;
        }
        ids.push(self.graphs.len());
        self.graphs.push(g);
        true
    }
}

// Attach an odd ear with `internals` fresh interior vertices between u and v.
fn apply_ear(g: &Graph, u: usize, v: usize, internals: usize) -> Option<Graph> {
    if internals == 0 {
        if g.has_edge(u, v) {
            return None;
        }
        return g.plus_edges(&[Edge::new(u, v)]).ok();
    }
    let n = g.vertex_count();
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut prev = u;
    for k in 0..internals {
        pairs.push((prev, n + k));
        prev = n + k;
    }
    pairs.push((prev, v));
    Graph::new(n + internals, &pairs).ok()
}

fn ear_choices(g: &Graph, max_verts: usize, max_edges: usize) -> Vec<(usize, usize, usize)> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let mut c = 0;
            while n + c <= max_verts && m + c + 1 <= max_edges {
                out.push((u, v, c));
                c += 2;
            }
        }
    }
    out
}

/// One representative per isomorphism class of every connected bipartite
/// 1-extendible graph with at most `max_verts` vertices: the closure of K2
/// under single odd-ear additions. Those graphs are exactly the ones so
/// reachable, and an ear between opposite colour classes always preserves
/// both properties; the checks below only guard the closure's boundaries.
pub fn bipartite_universe(max_verts: usize) -> Vec<Graph> {
    let mut store = IsoStore::new();
    store.insert(catalog::complete(2));
    let mut next = 0usize;
    while next < store.graphs.len() {
        let g = store.graphs[next].clone();
        next += 1;
        // edge bound: a bipartite graph on a+b vertices has at most a*b edges
        for (u, v, c) in ear_choices(&g, max_verts, max_verts * max_verts / 4) {
            if let Some(h) = apply_ear(&g, u, v, c) {
                if h.is_bipartite() && matchings::is_one_extendible(&h) {
                    store.insert(h);
                }
            }
        }
    }
    store.graphs
}

/// One representative per isomorphism class of the 1-extendible graphs
/// reachable from K2 by 1- and 2-ear additions within the bounds. Taking
/// `max_edges` at least the edge count of every graph of interest makes
/// this exhaustive, because the stages of an ear decomposition never
/// exceed the final graph's size.
pub fn one_extendible_universe(max_verts: usize, max_edges: usize) -> Vec<Graph> {
    let mut store = IsoStore::new();
    store.insert(catalog::complete(2));
    let mut next = 0usize;
    while next < store.graphs.len() {
        let g = store.graphs[next].clone();
        next += 1;
        let choices = ear_choices(&g, max_verts, max_edges);
        // single ears; remember the failures for the pair step
        let mut rejected: Vec<&(usize, usize, usize)> = Vec::new();
        for choice in &choices {
            let (u, v, c) = *choice;
            match apply_ear(&g, u, v, c) {
                Some(h) if matchings::is_one_extendible(&h) => {
                    store.insert(h);
                }
                Some(_) => rejected.push(choice),
                None => {}
            }
        }
        // A pair where either single addition stays 1-extendible reaches its
        // result through that intermediate stage anyway, so only pairs of
        // individually rejected ears can produce anything new.
        for (a, &&(u1, v1, c1)) in rejected.iter().enumerate() {
            for &&(u2, v2, c2) in rejected.iter().skip(a + 1) {
                if u2 == u1 || u2 == v1 || v2 == u1 || v2 == v1 {
                    continue;
                }
                if g.vertex_count() + c1 + c2 > max_verts
                    || g.edge_count() + c1 + c2 + 2 > max_edges
                {
                    continue;
                }
                let Some(h1) = apply_ear(&g, u1, v1, c1) else { continue };
                let Some(h) = apply_ear(&h1, u2, v2, c2) else { continue };
                if matchings::is_one_extendible(&h) {
                    store.insert(h);
                }
            }
        }
    }
    store.graphs
}

// ---- seeded random instances ----

/// Kinds of instance streams the generator can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    RandomBipartiteEars,
    RandomTwoEarAdjunction,
    Catalog,
}

/// A reproducible generation request: same recipe, same instances.
#[derive(Debug, Clone)]
pub struct InstanceRecipe {
    pub kind: GeneratorKind,
    pub seed: u64,
    pub count: usize,
    pub max_verts: usize,
    pub max_edges: usize,
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Grow a random 1-extendible graph from K2 by randomly proposed ear
/// additions, each accepted only if the result stays 1-extendible (and
/// bipartite, when asked). Deterministic for a fixed generator state.
pub fn random_one_extendible(
    rng: &mut ChaCha8Rng,
    max_verts: usize,
    max_edges: usize,
    bipartite_only: bool,
) -> Graph {
    let mut g = catalog::complete(2);
    let target = rng.gen_range(3..=max_edges.max(3));
    let mut stalls = 0;
    while g.edge_count() < target && stalls < 60 {
        let n = g.vertex_count();
        let admissible = |h: &Graph| {
            h.vertex_count() <= max_verts
                && h.edge_count() <= max_edges
                && (!bipartite_only || h.is_bipartite())
                && matchings::is_one_extendible(h)
        };
        let try_pair = !bipartite_only && n >= 4 && rng.gen_bool(0.3);
        let candidate = if try_pair {
            // two disjoint chords in one step (how odd chords get in)
            let mut picks: Vec<usize> = (0..n).collect();
            for i in 0..4 {
                let j = rng.gen_range(i..n);
                picks.swap(i, j);
            }
            apply_ear(&g, picks[0].min(picks[1]), picks[0].max(picks[1]), 0)
                .and_then(|h| apply_ear(&h, picks[2].min(picks[3]), picks[2].max(picks[3]), 0))
        } else {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let c = 2 * rng.gen_range(0..=2);
            if u == v {
                None
            } else {
                apply_ear(&g, u.min(v), u.max(v), c)
            }
        };
        match candidate {
            Some(h) if admissible(&h) => {
                g = h;
                stalls = 0;
            }
            _ => stalls += 1,
        }
    }
    g
}

/// Uniformly random direction per edge.
pub fn random_orientation(rng: &mut ChaCha8Rng, g: &Graph) -> Orientation {
    let mut bits = Bits::zero(g.edge_count());
    for i in 0..g.edge_count() {
        bits.set(i, rng.gen_bool(0.5));
    }
    Orientation::from_bits(bits)
}

/// The graph stream for a recipe. Two-ear instances carry extra structure
/// and come from `witness::two_ear::generate_two_ear_instances` instead.
pub fn generate_graphs(recipe: &InstanceRecipe) -> Vec<Graph> {
    match recipe.kind {
        GeneratorKind::RandomBipartiteEars => {
            let mut rng = rng_for(recipe.seed);
            (0..recipe.count)
                .map(|_| random_one_extendible(&mut rng, recipe.max_verts, recipe.max_edges, true))
                .collect()
        }
        GeneratorKind::RandomTwoEarAdjunction => {
            let mut rng = rng_for(recipe.seed);
            (0..recipe.count)
                .map(|_| random_one_extendible(&mut rng, recipe.max_verts, recipe.max_edges, false))
                .collect()
        }
        GeneratorKind::Catalog => catalog::named()
            .into_iter()
            .map(|(_, g)| g)
            .filter(|g| g.vertex_count() <= recipe.max_verts && g.edge_count() <= recipe.max_edges)
            .take(recipe.count)
            .collect(),
    }
}
