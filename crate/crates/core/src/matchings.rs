//! 1-factors (perfect matchings), 1-extendibility, bicriticality, and
//! alternating circuits.
//!
//! Everything is enumerated by deterministic backtracking: branch on the
//! least uncovered vertex, try its neighbours in increasing order. That
//! makes every listing reproducible and gives a well-defined
//! "lexicographically least" factor.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::path::Circuit;
use crate::graph::{sym_diff, Edge, EdgeSet, Graph};
use crate::limits::Limits;

fn search(
    g: &Graph,
    active: &[bool],
    covered: &mut [bool],
    current: &mut Vec<Edge>,
    out: &mut Vec<EdgeSet>,
    cap: u64,
    first_only: bool,
) -> Result<bool> {
    let v = (0..g.vertex_count()).find(|&v| active[v] && !covered[v]);
    let v = match v {
        None => {
            if out.len() as u64 >= cap {
                return Err(Error::EnumerationCapExceeded("matching enumeration"));
            }
            out.push(current.iter().cloned().collect());
            return Ok(first_only);
        }
        Some(v) => v,
    };
    covered[v] = true;
    for &w in g.neighbors(v) {
        if active[w] && !covered[w] {
            covered[w] = true;
            current.push(Edge::new(v, w));
            let stop = search(g, active, covered, current, out, cap, first_only)?;
            current.pop();
            covered[w] = false;
            if stop {
                covered[v] = false;
                return Ok(true);
            }
        }
    }
    covered[v] = false;
    Ok(false)
}

fn enumerate(g: &Graph, active: &[bool], cap: u64, first_only: bool) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    if active.iter().filter(|&&a| a).count() % 2 == 1 {
        return Ok(out); // odd number of vertices to cover
    }
    let mut covered = vec![false; g.vertex_count()];
    let mut current = Vec::new();
    search(g, active, &mut covered, &mut current, &mut out, cap, first_only)?;
    Ok(out)
}

/// All 1-factors, in deterministic order.
pub fn perfect_matchings(g: &Graph, limits: &Limits) -> Result<Vec<EdgeSet>> {
    let active = vec![true; g.vertex_count()];
    enumerate(g, &active, limits.max_factors, false)
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    let active = vec![true; g.vertex_count()];
    !enumerate(g, &active, u64::MAX, true).unwrap().is_empty()
}

/// All 1-factors of the support, in deterministic order. Unlike
/// [`perfect_matchings`] this ignores isolated vertices, which subgraphs
/// stored with their host's vertex count always carry.
pub fn support_perfect_matchings(g: &Graph, limits: &Limits) -> Result<Vec<EdgeSet>> {
    let active: Vec<bool> = (0..g.vertex_count()).map(|v| g.degree(v) > 0).collect();
    enumerate(g, &active, limits.max_factors, false)
}

/// Is `f` a 1-factor of the support of `g` (covering exactly the vertices
/// of positive degree)?
pub fn is_support_factor(g: &Graph, f: &EdgeSet) -> bool {
    if f.iter().any(|e| !g.has(*e)) {
        return false;
    }
    let mut covered = vec![0usize; g.vertex_count()];
    for e in f {
        covered[e.u] += 1;
        covered[e.v] += 1;
    }
    (0..g.vertex_count()).all(|v| covered[v] == usize::from(g.degree(v) > 0))
}

/// The first 1-factor in enumeration order.
pub fn lex_least_factor(g: &Graph) -> Result<EdgeSet> {
    let active = vec![true; g.vertex_count()];
    enumerate(g, &active, u64::MAX, true)?
        .pop()
        .ok_or(Error::NoFactor)
}

/// Does some matching of `g` cover exactly the given vertices (using only
/// edges with both ends inside)?
pub fn has_matching_covering(g: &Graph, verts: &BTreeSet<usize>) -> bool {
    let mut active = vec![false; g.vertex_count()];
    for &v in verts {
        active[v] = true;
    }
    !enumerate(g, &active, u64::MAX, true).unwrap().is_empty()
}

/// First matching covering exactly `verts`, if any.
pub fn matching_covering(g: &Graph, verts: &BTreeSet<usize>) -> Option<EdgeSet> {
    let mut active = vec![false; g.vertex_count()];
    for &v in verts {
        active[v] = true;
    }
    enumerate(g, &active, u64::MAX, true).unwrap().pop()
}

/// Does `g - avoid` still have a perfect matching on the rest?
pub fn has_matching_avoiding(g: &Graph, avoid: &[usize]) -> bool {
    let mut active = vec![true; g.vertex_count()];
    for &v in avoid {
        active[v] = false;
    }
    !enumerate(g, &active, u64::MAX, true).unwrap().is_empty()
}

pub fn is_one_factor(g: &Graph, f: &EdgeSet) -> bool {
    if f.iter().any(|e| !g.has(*e)) {
        return false;
    }
    let mut covered = vec![0usize; g.vertex_count()];
    for e in f {
        covered[e.u] += 1;
        covered[e.v] += 1;
    }
    covered.iter().all(|&c| c == 1)
}

/// Connected, and every edge lies in some 1-factor.
pub fn is_one_extendible(g: &Graph) -> bool {
    if g.edge_count() == 0 || !g.is_connected() {
        return false;
    }
    if g.vertex_count() % 2 == 1 {
        return false;
    }
    g.edges()
        .iter()
        .all(|e| has_matching_avoiding(g, &[e.u, e.v]))
}

/// One-extendibility of a subgraph that is stored with its host's vertex
/// count: isolated vertices are ignored, the edges must form a connected
/// graph, and every edge must extend to a matching covering the support.
pub fn is_one_extendible_on_support(h: &Graph) -> bool {
    if h.edge_count() == 0 || !h.support_connected() {
        return false;
    }
    let support: BTreeSet<usize> = h.support().into_iter().collect();
    if support.len() % 2 == 1 {
        return false;
    }
    h.edges().iter().all(|e| {
        let mut rest = support.clone();
        rest.remove(&e.u);
        rest.remove(&e.v);
        has_matching_covering(h, &rest)
    })
}

/// Is `cut` a tight cut: an edge cut met exactly once by every 1-factor?
///
/// `cut` must be exactly the set of edges between some vertex set W and its
/// complement. Equivalently: no cut edge may lie inside a component of
/// `g - cut`, and the components must be two-colourable with every cut edge
/// crossing the colours (W = one colour class). Anything else is `NotACut`.
pub fn is_tight_cut(g: &Graph, cut: &EdgeSet, limits: &Limits) -> Result<bool> {
    if cut.is_empty() || cut.iter().any(|e| !g.has(*e)) {
        return Err(Error::NotACut);
    }
    let rest = g.minus_edges(&cut.iter().cloned().collect::<Vec<_>>());
    let comps = rest.components();
    let mut comp = vec![usize::MAX; g.vertex_count()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp[v] = i;
        }
    }
    if cut.iter().any(|e| comp[e.u] == comp[e.v]) {
        return Err(Error::NotACut); // superfluous edge inside one shore
    }
    // 2-colour the component graph along the cut edges
    let mut colour = vec![u8::MAX; comps.len()];
    for start in 0..comps.len() {
        if colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        let mut queue = vec![start];
        while let Some(c) = queue.pop() {
            for e in cut {
                let (a, b) = (comp[e.u], comp[e.v]);
                let d = if a == c { b } else if b == c { a } else { continue };
                if colour[d] == u8::MAX {
                    colour[d] = 1 - colour[c];
                    queue.push(d);
                } else if colour[d] == colour[c] {
                    return Err(Error::NotACut); // not of the form δ(W)
                }
            }
        }
    }
    for f in perfect_matchings(g, limits)? {
        if f.intersection(cut).count() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A 1-factor of `g` minus the given vertices, if one exists. Removing all
/// of `g` leaves the empty graph, whose empty factor counts.
pub fn complementary_factor_exists(g: &Graph, h_vertices: &BTreeSet<usize>) -> Option<EdgeSet> {
    let rest: BTreeSet<usize> = (0..g.vertex_count())
        .filter(|v| !h_vertices.contains(v))
        .collect();
    matching_covering(g, &rest)
}

/// Is the circuit alternating with respect to `f` (edges alternately in and
/// out of `f`)? Odd circuits never are.
pub fn is_alternating(c: &Circuit, f: &EdgeSet) -> bool {
    if !c.is_even() {
        return false;
    }
    let edges = c.edges();
    let l = edges.len();
    (0..l).all(|i| f.contains(&edges[i]) != f.contains(&edges[(i + 1) % l]))
}

/// Split the symmetric difference of two 1-factors into its circuits.
pub fn circuits_of_symmetric_difference(f1: &EdgeSet, f2: &EdgeSet) -> Vec<Circuit> {
    let diff = sym_diff(f1, f2);
    let mut remaining = diff;
    let mut out = Vec::new();
    while let Some(&start_edge) = remaining.iter().next() {
        // walk the circuit through start_edge; every vertex of the
        // difference has degree exactly two
        let mut verts = vec![start_edge.u];
        let mut cur = start_edge.v;
        let mut prev_edge = start_edge;
        remaining.remove(&start_edge);
        while cur != verts[0] {
            verts.push(cur);
            let e = *remaining
                .iter()
                .find(|e| e.touches(cur) && **e != prev_edge)
                .expect("vertex of a factor symmetric difference has degree 2");
            remaining.remove(&e);
            prev_edge = e;
            cur = e.other(cur);
        }
        out.push(Circuit::from_vertex_cycle(&verts));
    }
    out.sort();
    out
}

/// All circuits alternating with respect to the given 1-factor. A circuit is
/// f-alternating exactly when it is a component of `f Δ f'` for some other
/// 1-factor `f'`, so enumerating factors covers everything.
pub fn alternating_circuits_wrt(g: &Graph, f: &EdgeSet, limits: &Limits) -> Result<Vec<Circuit>> {
    if !is_one_factor(g, f) {
        return Err(Error::NotAFactor);
    }
    let mut set: BTreeSet<Circuit> = BTreeSet::new();
    for other in perfect_matchings(g, limits)? {
        if other == *f {
            continue;
        }
        for c in circuits_of_symmetric_difference(f, &other) {
            set.insert(c);
            if set.len() as u64 > limits.max_circuits {
                return Err(Error::EnumerationCapExceeded("alternating circuits"));
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// All circuits alternating with respect to `f` among the 1-factors of the
/// support of `g`; the counterpart of [`alternating_circuits_wrt`] for
/// subgraphs stored with their host's vertex count.
pub fn alternating_circuits_on_support(
    g: &Graph,
    f: &EdgeSet,
    limits: &Limits,
) -> Result<Vec<Circuit>> {
    if !is_support_factor(g, f) {
        return Err(Error::NotAFactor);
    }
    let mut set: BTreeSet<Circuit> = BTreeSet::new();
    for other in support_perfect_matchings(g, limits)? {
        if other == *f {
            continue;
        }
        for c in circuits_of_symmetric_difference(f, &other) {
            set.insert(c);
            if set.len() as u64 > limits.max_circuits {
                return Err(Error::EnumerationCapExceeded("alternating circuits"));
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// All circuits alternating with respect to at least one 1-factor.
pub fn all_alternating_circuits(g: &Graph, limits: &Limits) -> Result<Vec<Circuit>> {
    let factors = perfect_matchings(g, limits)?;
    let mut set: BTreeSet<Circuit> = BTreeSet::new();
    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            for c in circuits_of_symmetric_difference(&factors[i], &factors[j]) {
                set.insert(c);
                if set.len() as u64 > limits.max_circuits {
                    return Err(Error::EnumerationCapExceeded("alternating circuits"));
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn factor(pairs: &[(usize, usize)]) -> EdgeSet {
        pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }

    #[test]
    fn factor_counts() {
        let lim = Limits::default();
        assert_eq!(perfect_matchings(&catalog::cycle(4), &lim).unwrap().len(), 2);
        assert_eq!(perfect_matchings(&catalog::complete(4), &lim).unwrap().len(), 3);
        assert_eq!(perfect_matchings(&catalog::k33(), &lim).unwrap().len(), 6);
        assert_eq!(perfect_matchings(&catalog::petersen(), &lim).unwrap().len(), 6);
        assert_eq!(perfect_matchings(&catalog::cycle(5), &lim).unwrap().len(), 0);
    }

    #[test]
    fn factor_cap_trips() {
        let mut lim = Limits::default();
        lim.max_factors = 3;
        assert!(matches!(
            perfect_matchings(&catalog::k33(), &lim),
            Err(Error::EnumerationCapExceeded(_))
        ));
    }

    #[test]
    fn lex_least_factor_of_k33() {
        let f = lex_least_factor(&catalog::k33()).unwrap();
        assert_eq!(f, factor(&[(0, 3), (1, 4), (2, 5)]));
        assert!(matches!(
            lex_least_factor(&catalog::cycle(5)),
            Err(Error::NoFactor)
        ));
    }

    #[test]
    fn one_extendibility() {
        assert!(is_one_extendible(&catalog::complete(2)));
        assert!(is_one_extendible(&catalog::cycle(4)));
        assert!(is_one_extendible(&catalog::complete(4)));
        assert!(is_one_extendible(&catalog::k33()));
        assert!(is_one_extendible(&catalog::petersen()));
        assert!(is_one_extendible(&catalog::prism()));
        // path on 4 vertices: middle edge lies in no 1-factor
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_one_extendible(&p4));
        // disconnected union of two K2s
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_one_extendible(&two_k2));
    }

    #[test]
    fn one_extendibility_on_partial_supports() {
        // C6 with vertices 6 and 7 isolated
        let c6 = catalog::cycle(6);
        let pairs: Vec<(usize, usize)> = c6.edges().iter().map(|e| (e.u, e.v)).collect();
        let wide = Graph::new(8, &pairs).unwrap();
        assert!(is_one_extendible_on_support(&wide));
        // a path is connected on its support but not 1-extendible
        let path = Graph::new(6, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_one_extendible_on_support(&path));
        // two disjoint edges: disconnected support
        let two = Graph::new(6, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_one_extendible_on_support(&two));
    }

    #[test]
    fn alternating_circuits_of_k33() {
        let g = catalog::k33();
        let f = lex_least_factor(&g).unwrap();
        let lim = Limits::default();
        let wrt = alternating_circuits_wrt(&g, &f, &lim).unwrap();
        // three 4-circuits (swap two spokes) and two 6-circuits
        assert_eq!(wrt.len(), 5);
        assert_eq!(wrt.iter().filter(|c| c.len() == 4).count(), 3);
        assert_eq!(wrt.iter().filter(|c| c.len() == 6).count(), 2);
        assert!(wrt.iter().all(|c| is_alternating(c, &f)));
        // over all factors: every 4-circuit (9) and every hexagon (6)
        let all = all_alternating_circuits(&g, &lim).unwrap();
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn k2_has_no_alternating_circuits(){
        let g = catalog::complete(2);
        let f = lex_least_factor(&g).unwrap();
        assert!(alternating_circuits_wrt(&g, &f, &Limits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn alternation_check() {
        let c = Circuit::from_vertex_cycle(&[0, 1, 2, 3]);
        assert!(is_alternating(&c, &factor(&[(0, 1), (2, 3)])));
        assert!(is_alternating(&c, &factor(&[(1, 2), (0, 3)])));
        assert!(!is_alternating(&c, &factor(&[(0, 1), (1, 2)])));
        let odd = Circuit::from_vertex_cycle(&[0, 1, 2]);
        assert!(!is_alternating(&odd, &factor(&[(0, 1)])));
    }

    #[test]
    fn tight_cuts() {
        let lim = Limits::default();
        let c6 = catalog::cycle(6);
        // the star of one vertex is tight: it must be matched exactly once
        let star: EdgeSet = factor(&[(0, 1), (0, 5)]);
        assert_eq!(is_tight_cut(&c6, &star, &lim), Ok(true));
        // separating two adjacent vertices: one factor avoids the cut entirely
        let pair: EdgeSet = factor(&[(1, 2), (0, 5)]);
        assert_eq!(is_tight_cut(&c6, &pair, &lim), Ok(false));
        // the three rungs of the prism meet the all-rungs factor three times
        let prism = catalog::prism();
        let rungs: EdgeSet = factor(&[(0, 3), (1, 4), (2, 5)]);
        assert_eq!(is_tight_cut(&prism, &rungs, &lim), Ok(false));
        // non-cuts are rejected: removal keeps C6 connected, and a superset
        // of a cut has superfluous edges
        let chord_only: EdgeSet = factor(&[(0, 1)]);
        assert!(matches!(is_tight_cut(&c6, &chord_only, &lim), Err(Error::NotACut)));
        let sloppy: EdgeSet = factor(&[(0, 1), (0, 5), (2, 3)]);
        assert!(matches!(is_tight_cut(&c6, &sloppy, &lim), Err(Error::NotACut)));
    }

    #[test]
    fn complementary_factors() {
        let c6 = catalog::cycle(6);
        let two: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(
            complementary_factor_exists(&c6, &two),
            Some(factor(&[(2, 3), (4, 5)]))
        );
        let everything: BTreeSet<usize> = (0..6).collect();
        assert_eq!(complementary_factor_exists(&c6, &everything), Some(EdgeSet::new()));
        let one: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(complementary_factor_exists(&c6, &one), None);
    }

    #[test]
    fn matching_covering_subsets() {
        let g = catalog::cycle(6);
        let all: BTreeSet<usize> = (0..6).collect();
        assert!(has_matching_covering(&g, &all));
        let path: BTreeSet<usize> = [1, 2, 3, 4].into_iter().collect();
        assert_eq!(
            matching_covering(&g, &path),
            Some(factor(&[(1, 2), (3, 4)]))
        );
        let gap: BTreeSet<usize> = [0, 2].into_iter().collect();
        assert!(!has_matching_covering(&g, &gap));
    }
}
