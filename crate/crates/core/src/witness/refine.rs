//! Reshaping a pair of opposite-parity alternating circuits until they
//! overlap in a single shared run.
//!
//! The cascade search wants two alternating circuits through both
//! designated edges that have opposite clockwise parity and share exactly
//! one maximal run of edges (which then carries both designated edges).
//! Arbitrary mixed-parity pairs rarely look like that, so [`refine_pair`]
//! walks them into shape: repeatedly pick an alternating circuit of the
//! pair's union with at most two runs off the first circuit and exchange
//! material along it, shrinking the union, until a terminal pair appears.
//! [`reduce_to_single_arc`] then removes the two-run case by swapping in
//! the clockwise-even component of the symmetric difference.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::path::Circuit;
use crate::graph::{sym_diff, Edge, EdgeSet, Graph};
use crate::internal;
use crate::limits::Limits;
use crate::matchings;
use crate::pfaffian::{self, Orientation};

use super::two_ear::TwoEarInstance;

/// Maximal runs of consecutive `b`-edges that also lie on `a` (given as its
/// edge set), in traversal order. Returns one run per visit, or a single
/// all-edges run when `b` lies entirely inside `a`.
pub(super) fn shared_runs(b: &Circuit, ea: &EdgeSet) -> Vec<Vec<Edge>> {
    let edges = b.edges();
    let l = edges.len();
    let Some(start) = (0..l).find(|&i| !ea.contains(&edges[i])) else {
        return vec![edges];
    };
    let mut runs = Vec::new();
    let mut run: Vec<Edge> = Vec::new();
    for k in 1..=l {
        let e = edges[(start + k) % l];
        if ea.contains(&e) {
            run.push(e);
        } else if !run.is_empty() {
            runs.push(std::mem::take(&mut run));
        }
    }
    if !run.is_empty() {
        runs.push(run);
    }
    runs
}

/// Both circuits pass through both designated edges, alternate with respect
/// to `fg`, and have opposite clockwise parity.
fn pair_invariants_ok(
    inst: &TwoEarInstance,
    o: &Orientation,
    x: &Circuit,
    y: &Circuit,
    fg: &EdgeSet,
) -> bool {
    for c in [x, y] {
        let es = c.edge_set();
        if !es.contains(&inst.e1) || !es.contains(&inst.e2) {
            return false;
        }
        if !matchings::is_alternating(c, fg) {
            return false;
        }
    }
    match (
        pfaffian::clockwise_parity(&inst.g, o, x),
        pfaffian::clockwise_parity(&inst.g, o, y),
    ) {
        (Ok(p), Ok(q)) => p != q,
        _ => false,
    }
}

/// The full terminal contract of the refinement: pair invariants, one or
/// two shared runs jointly carrying both designated edges (one each when
/// there are two runs), and off-runs that avoid the first circuit's
/// vertices internally, so that each is a genuine excursion.
fn normal_shape_ok(
    inst: &TwoEarInstance,
    o: &Orientation,
    x: &Circuit,
    y: &Circuit,
    fg: &EdgeSet,
) -> bool {
    if !pair_invariants_ok(inst, o, x, y, fg) {
        return false;
    }
    let ex = x.edge_set();
    let vx: BTreeSet<usize> = x.verts().iter().copied().collect();
    let runs = shared_runs(y, &ex);
    if runs.is_empty() || runs.len() > 2 {
        return false;
    }
    let all: EdgeSet = runs.iter().flatten().copied().collect();
    if !all.contains(&inst.e1) || !all.contains(&inst.e2) {
        return false;
    }
    if runs.len() == 2
        && runs
            .iter()
            .any(|r| !r.contains(&inst.e1) && !r.contains(&inst.e2))
    {
        return false;
    }
    y.arcs_outside_strict(&ex, &vx).len() == runs.len()
}

/// Number of maximal runs of `c` off the stage when it is one or two and
/// the circuit genuinely extends the stage; mirrors the filter used when
/// adjoining ears.
fn usable(stage: &Graph, ex: &EdgeSet, c: &Circuit) -> Option<usize> {
    if !c.verts().iter().any(|&v| stage.degree(v) > 0) {
        return None;
    }
    if c.edges().iter().all(|e| ex.contains(e)) {
        return None;
    }
    let n = c.arcs_outside(ex).len();
    (n <= 2).then_some(n)
}

/// Refine a mixed-parity pair of alternating circuits through both
/// designated edges into the terminal shape described in the module
/// documentation. Returns `(x, y, factor)` where the two circuits share
/// one or two maximal runs and alternate with respect to the returned
/// 1-factor, which never uses a designated edge.
///
/// The walk keeps the state sound rather than trusting any single step:
/// every exchange is re-verified, failing candidates are skipped, and a
/// state revisit or exhaustion is reported as an internal error.
pub fn refine_pair(
    inst: &TwoEarInstance,
    o: &Orientation,
    a: &Circuit,
    b: &Circuit,
    limits: &Limits,
) -> Result<(Circuit, Circuit, EdgeSet)> {
    let g = &inst.g;
    let mut x = a.clone();
    let mut y = b.clone();
    let mut fg = inst.f.clone();
    if !pair_invariants_ok(inst, o, &x, &y, &fg) {
        return Err(Error::InvalidInput(
            "refinement needs an opposite-parity pair of alternating circuits through both designated edges"
                .into(),
        ));
    }
    let mut visited: BTreeSet<(EdgeSet, EdgeSet, EdgeSet)> = BTreeSet::new();
    for _ in 0..4096 {
        let ex = x.edge_set();
        let ey = y.edge_set();
        if !visited.insert((ex.clone(), ey.clone(), fg.clone())) {
            return Err(internal!("pair refinement revisited a state"));
        }
        let union: EdgeSet = ex.union(&ey).copied().collect();
        let gi = g.edge_subgraph(&union);
        let fi: EdgeSet = fg.iter().copied().filter(|e| union.contains(e)).collect();
        debug_assert!(matchings::is_support_factor(&gi, &fi));
        let circuits = matchings::alternating_circuits_on_support(&gi, &fi, limits)?;
        let stage = g.edge_subgraph(&ex);
        let mut cands: Vec<(usize, &Circuit)> = Vec::new();
        for c in &circuits {
            if c.edge_set() == ex {
                continue;
            }
            if let Some(n) = usable(&stage, &ex, c) {
                cands.push((n, c));
            }
        }
        cands.sort_by(|p, q| p.0.cmp(&q.0).then_with(|| p.1.cmp(q.1)));
        let mut advanced = false;
        for (_, bp) in cands {
            let ebp = bp.edge_set();
            // An even circuit crosses between the colour classes of the
            // core an even number of times, so it uses the two designated
            // edges both or neither.
            debug_assert_eq!(ebp.contains(&inst.e1), ebp.contains(&inst.e2));
            let c_edges = sym_diff(&ex, &ebp);
            let Ok(c) = Circuit::from_edge_set(&c_edges) else {
                continue;
            };
            if ebp.contains(&inst.e1) && ebp.contains(&inst.e2) {
                match pfaffian::clockwise_parity(g, o, &c) {
                    Ok(0) => {
                        // The exchange circuit has opposite parity to x and
                        // carries both designated edges: terminal shape.
                        if normal_shape_ok(inst, o, &x, bp, &fg) {
                            return Ok((x, bp.clone(), fg));
                        }
                    }
                    Ok(_) => {
                        // Same parity as x; swapping it in for x keeps the
                        // pair mixed and shrinks the union.
                        if pair_invariants_ok(inst, o, bp, &y, &fg) {
                            x = bp.clone();
                            advanced = true;
                            break;
                        }
                    }
                    Err(_) => {}
                }
            } else {
                // The exchange circuit avoids the designated edges, so
                // both members can be rerouted along it while the factor
                // toggles to match.
                let Ok(ny) = Circuit::from_edge_set(&sym_diff(&ey, &ebp)) else {
                    continue;
                };
                let nf = sym_diff(&fg, &ebp);
                debug_assert!(matchings::is_one_factor(g, &nf));
                if pair_invariants_ok(inst, o, &c, &ny, &nf) {
                    x = c;
                    y = ny;
                    fg = nf;
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            return Err(internal!("pair refinement ran out of exchange candidates"));
        }
    }
    Err(internal!("pair refinement did not terminate"))
}

/// Turn a terminal two-run pair into a one-run pair. The symmetric
/// difference of the circuits splits into two disjoint circuits; when the
/// pair has opposite parity exactly one of them is clockwise even, and
/// exchanging `x` along it removes one shared run while preserving every
/// pair invariant. Pairs already sharing a single run pass through
/// unchanged.
pub fn reduce_to_single_arc(
    inst: &TwoEarInstance,
    o: &Orientation,
    x: &Circuit,
    y: &Circuit,
    fg: &EdgeSet,
) -> Result<(Circuit, Circuit, EdgeSet)> {
    let ex = x.edge_set();
    if !normal_shape_ok(inst, o, x, y, fg) {
        return Err(Error::InvalidInput(
            "reduction needs a pair in terminal shape".into(),
        ));
    }
    if shared_runs(y, &ex).len() == 1 {
        return Ok((x.clone(), y.clone(), fg.clone()));
    }
    let parts = matchings::circuits_of_symmetric_difference(&ex, &y.edge_set());
    if parts.len() != 2 {
        return Err(Error::HypothesisViolated(
            "the symmetric difference of a two-run pair did not split into two circuits".into(),
        ));
    }
    // Try the clockwise-even component first; the odd one is kept as a
    // verified fallback in case the even exchange fails structurally.
    let mut order = [&parts[0], &parts[1]];
    if matches!(pfaffian::clockwise_parity(&inst.g, o, &parts[1]), Ok(0)) {
        order.swap(0, 1);
    }
    for d in order {
        let Ok(ny) = Circuit::from_edge_set(&sym_diff(&ex, &d.edge_set())) else {
            continue;
        };
        if shared_runs(&ny, &ex).len() == 1 && normal_shape_ok(inst, o, x, &ny, fg) {
            return Ok((x.clone(), ny, fg.clone()));
        }
    }
    Err(Error::HypothesisViolated(
        "a two-run pair could not be reduced to a single shared run".into(),
    ))
}

/// Positional law tying a circuit's excursions off `a` to the factor edges
/// where they attach. For every maximal excursion of `c` off the circuit
/// `a` with endpoints y and z, the factor edges of `a` at y and z lie on
/// both circuits, and the number of them inside the stretch of `a - e1`
/// between y and z has the same parity as the presence of the second
/// designated edge in that stretch. Returns false as soon as any excursion
/// breaks the law (or the inputs do not fit its shape at all).
pub fn contact_ordering_check(inst: &TwoEarInstance, a: &Circuit, c: &Circuit) -> bool {
    contact_ordering_with(&inst.f, inst.e1, Some(inst.e2), a, c)
}

pub(super) fn contact_ordering_with(
    f: &EdgeSet,
    e1: Edge,
    e2: Option<Edge>,
    a: &Circuit,
    c: &Circuit,
) -> bool {
    let ea = a.edge_set();
    if !ea.contains(&e1) {
        return false;
    }
    let Some(ap) = a.cut_at(e1) else {
        return false;
    };
    let va: BTreeSet<usize> = a.verts().iter().copied().collect();
    if c.edges().iter().all(|e| ea.contains(e)) {
        return true;
    }
    if !c.verts().iter().any(|v| va.contains(v)) {
        return true;
    }
    let ec = c.edge_set();
    for arc in c.arcs_outside_strict(&ea, &va) {
        let (yv, zv) = (arc.first(), arc.last());
        let (Some(py), Some(pz)) = (ap.position(yv), ap.position(zv)) else {
            return false;
        };
        let seg = ap.slice(py.min(pz), py.max(pz)).edge_set();
        // Count attachment edges per endpoint: when one factor edge serves
        // both excursion ends it contributes twice.
        let mut inside = 0;
        for v in [yv, zv] {
            let Some((p, q)) = a.edges_at(v) else {
                return false;
            };
            let fe = if f.contains(&p) { p } else { q };
            if !f.contains(&fe) || !ec.contains(&fe) {
                return false;
            }
            if seg.contains(&fe) {
                inside += 1;
            }
        }
        if inside % 2 != usize::from(e2.is_some_and(|e| seg.contains(&e))) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, e};
    use crate::limits::Limits;

    // The smallest instance with a mixed-parity circuit pool would be
    // non-Pfaffian, so refinement fixtures are built directly instead: the
    // triangle-expanded K3,3 has exactly two alternating circuits through
    // both designated edges, already of opposite parity and sharing one
    // run, which makes it both a fixed-point test and a shape test.
    fn expansion_fixture() -> (TwoEarInstance, Orientation, Circuit, Circuit) {
        let limits = Limits::default();
        let (t, _) = catalog::expand_vertex_to_odd_circuit(&catalog::k33(), 0, 3);
        let inst =
            TwoEarInstance::with_least_factor(t, e(0, 3), e(6, 7), &limits).unwrap();
        let core = inst.core();
        let o_core = match pfaffian::decide_pfaffian(&core, &limits).unwrap() {
            pfaffian::PfaffianVerdict::Pfaffian(o) => o,
            _ => panic!("the core of the expansion is Pfaffian"),
        };
        let o = o_core.transfer(&core, &inst.g);
        let through: Vec<Circuit> =
            matchings::alternating_circuits_wrt(&inst.g, &inst.f, &limits)
                .unwrap()
                .into_iter()
                .filter(|c| {
                    let es = c.edge_set();
                    es.contains(&inst.e1) && es.contains(&inst.e2)
                })
                .collect();
        assert_eq!(through.len(), 2);
        let parities: Vec<u8> = through
            .iter()
            .map(|c| pfaffian::clockwise_parity(&inst.g, &o, c).unwrap())
            .collect();
        assert_ne!(parities[0], parities[1], "the expansion is not Pfaffian");
        let (a, b) = (through[0].clone(), through[1].clone());
        (inst, o, a, b)
    }

    #[test]
    fn a_pair_already_in_shape_is_a_fixed_point() {
        let (inst, o, a, b) = expansion_fixture();
        let (x, y, fg) = refine_pair(&inst, &o, &a, &b, &Limits::default()).unwrap();
        // The two circuits share the run through both designated edges and
        // differ in a single excursion, so nothing should change.
        assert_eq!(fg, inst.f);
        let pre: BTreeSet<EdgeSet> = [a.edge_set(), b.edge_set()].into();
        let post: BTreeSet<EdgeSet> = [x.edge_set(), y.edge_set()].into();
        assert_eq!(pre, post);
        assert_eq!(shared_runs(&y, &x.edge_set()).len(), 1);
        let (x2, y2, _) = reduce_to_single_arc(&inst, &o, &x, &y, &fg).unwrap();
        assert_eq!(x2.edge_set(), x.edge_set());
        assert_eq!(y2.edge_set(), y.edge_set());
    }

    #[test]
    fn refinement_rejects_same_parity_input() {
        let (inst, o, a, _) = expansion_fixture();
        let err = refine_pair(&inst, &o, &a, &a, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn shared_runs_split_and_count_correctly() {
        // Hexagon against its lower half: edges 01,12 shared, 34,45 shared,
        // the rest off — two runs.
        let hex = Circuit::from_vertex_cycle(&[0, 1, 2, 3, 4, 5]);
        let ea: EdgeSet = [e(0, 1), e(1, 2), e(3, 4), e(4, 5)].into_iter().collect();
        let runs = shared_runs(&hex, &ea);
        assert_eq!(runs.len(), 2);
        let sizes: BTreeSet<usize> = runs.iter().map(|r| r.len()).collect();
        assert_eq!(sizes, BTreeSet::from([2]));
        assert_eq!(shared_runs(&hex, &hex.edge_set()).len(), 1);
    }

    #[test]
    fn contact_ordering_holds_on_the_expansion_members() {
        let (inst, _, a, b) = expansion_fixture();
        // Every alternating circuit of the graph must satisfy the law
        // against either through-circuit.
        let all = matchings::alternating_circuits_wrt(&inst.g, &inst.f, &Limits::default()).unwrap();
        for host in [&a, &b] {
            for c in &all {
                assert!(contact_ordering_check(&inst, host, c));
            }
        }
    }

    #[test]
    fn contact_ordering_rejects_missing_attachments() {
        let (inst, _, a, _) = expansion_fixture();
        // A circuit through a's vertices whose factor edges at the
        // excursion ends are not on it: the core 4-circuit 1-3-2-4 touches
        // a at 1 and its factor edge there (1-3) only when built so; use a
        // circuit avoiding the designated structure entirely but crossing
        // a's vertex set with the wrong edges.
        let quad = Circuit::from_vertex_cycle(&[1, 4, 2, 5]);
        // 1 lies on a, its factor edge on a is 1-3, which the quad misses,
        // so the law must reject the configuration (rather than crash).
        if a.contains_vertex(1) {
            assert!(!contact_ordering_check(&inst, &a, &quad));
        }
    }
}
