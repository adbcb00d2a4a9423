use crate::graph::Graph;

/// Cheap isomorphism invariant: order, size, sorted degree sequence. Graphs
/// with different keys are never isomorphic, so the key works as a bucket
/// index when deduplicating.
pub fn invariant_key(g: &Graph) -> (usize, usize, Vec<usize>) {
    let mut degs: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    (g.vertex_count(), g.edge_count(), degs)
}

/// Isomorphism by backtracking. Vertices are matched in order of a refinement
/// label (degree plus sorted neighbour degrees), which prunes most mismatches
/// immediately. Fine for the small graphs this crate deals with; not meant
/// for large or highly regular inputs beyond a few dozen vertices.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if invariant_key(a) != invariant_key(b) {
        return false;
    }
    let n = a.vertex_count();
    if n == 0 {
        return true;
    }
    let label = |g: &Graph, v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let la: Vec<_> = (0..n).map(|v| label(a, v)).collect();
    let lb: Vec<_> = (0..n).map(|v| label(b, v)).collect();
    {
        let mut sa = la.clone();
        let mut sb = lb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    // Match the most constrained (rarest label, highest degree) vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    let count = |l: &(usize, Vec<usize>)| la.iter().filter(|x| *x == l).count();
    order.sort_by_key(|&v| (count(&la[v]), usize::MAX - la[v].0, v));

    let mut map = vec![usize::MAX; n]; // a-vertex -> b-vertex
    let mut used = vec![false; n];

    fn assign(
        pos: usize,
        order: &[usize],
        a: &Graph,
        b: &Graph,
        la: &[(usize, Vec<usize>)],
        lb: &[(usize, Vec<usize>)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'cand: for w in 0..b.vertex_count() {
            if used[w] || lb[w] != la[v] {
                continue;
            }
            // edges to already-mapped vertices must match exactly
            for &x in a.neighbors(v) {
                if map[x] != usize::MAX && !b.has_edge(w, map[x]) {
                    continue 'cand;
                }
            }
            for prev in &order[..pos] {
                if a.has_edge(v, *prev) != b.has_edge(w, map[*prev]) {
                    continue 'cand;
                }
            }
            map[v] = w;
            used[w] = true;
            if assign(pos + 1, order, a, b, la, lb, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    assign(0, &order, a, b, &la, &lb, &mut map, &mut used)
}

/// Deduplicate a list of graphs up to isomorphism, keeping first occurrences
/// in order. Uses invariant buckets so the quadratic pairwise check only runs
/// within a bucket.
pub fn dedup_isomorphic(graphs: Vec<Graph>) -> Vec<Graph> {
    use std::collections::HashMap;
    let mut buckets: HashMap<(usize, usize, Vec<usize>), Vec<usize>> = HashMap::new();
    let mut keep: Vec<Graph> = Vec::new();
    for g in graphs {
        let key = invariant_key(&g);
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().any(|&i| is_isomorphic(&keep[i], &g)) {
            continue;
        }
        bucket.push(keep.len());
        keep.push(g);
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::Graph;

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let a = catalog::cycle(6);
        let b = Graph::new(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn same_degrees_different_structure() {
        // C6 vs two triangles: both 2-regular on 6 vertices
        let c6 = catalog::cycle(6);
        let tt = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_isomorphic(&c6, &tt));
    }

    #[test]
    fn k33_vs_prism() {
        // both cubic on 6 vertices
        let k33 = catalog::k33();
        let prism = catalog::prism();
        assert!(!is_isomorphic(&k33, &prism));
        assert!(is_isomorphic(&k33, &catalog::k33()));
    }

    #[test]
    fn dedup_keeps_one_per_class() {
        let a = catalog::cycle(4);
        let b = Graph::new(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let c = catalog::complete(4);
        let kept = dedup_isomorphic(vec![a.clone(), b, c.clone()]);
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0], a);
        assert_eq!(kept[1], c);
    }
}
