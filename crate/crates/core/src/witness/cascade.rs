//! Chains of alternating circuits spanning the disagreement between two
//! oppositely oriented circuits, and the search that turns them into a
//! reducibility witness.
//!
//! A refined pair `(a, b)` through the designated edges disagrees on a
//! single contiguous stretch of `a` (the private run) bridged by a single
//! stretch of `b`. The cascade covers the private run with a chain of
//! alternating circuits from the level graph, reads off a digit string
//! recording where each chain member touches the bridge and the zone
//! before the second designated edge, and then massages that string with
//! verification-gated rewrites — local exchanges, pocket contractions,
//! factor flips and re-routings of `b` — until a digit pattern appears
//! whose neighbourhood is known to contain the sought structure. Every
//! rewrite re-derives and re-checks the whole frame, so a bug can only
//! lose completeness, never soundness; the final witness is re-verified
//! against the original graph from scratch.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::path::{Circuit, Path};
use crate::graph::{sym_diff, Contraction, Edge, EdgeSet, Graph};
use crate::internal;
use crate::limits::Limits;
use crate::matchings;
use crate::pfaffian::Orientation;

use super::refine::{contact_ordering_with, reduce_to_single_arc, refine_pair};
use super::two_ear::TwoEarInstance;
use super::{search_structures, verify_k33_witness, K33Witness};

/// One pocket contraction on the way down to the current level.
#[derive(Debug, Clone)]
struct StripRecord {
    /// The odd circuit that was contracted, in the coordinates of `g_before`.
    x: Circuit,
    con: Contraction,
    g_before: Graph,
}

/// The data defining one search state before any geometry is derived:
/// a level graph with its factor, the circuit pair, which edge the frame
/// is cut open at, and either the other designated edge or the merge
/// vertex left behind by pocket contractions.
#[derive(Debug, Clone)]
struct Seed {
    g: Graph,
    f: EdgeSet,
    a: Circuit,
    b: Circuit,
    cut: Edge,
    other: Option<Edge>,
    zmark: Option<usize>,
    strips: Vec<StripRecord>,
}

/// Dedup key for search states: the contraction history plus everything
/// the frame is derived from.
type StateKey = (
    Vec<EdgeSet>,
    EdgeSet,
    EdgeSet,
    EdgeSet,
    Edge,
    Option<Edge>,
    Option<usize>,
);

fn seed_key(s: &Seed) -> StateKey {
    (
        s.strips.iter().map(|r| r.x.edge_set()).collect(),
        s.a.edge_set(),
        s.b.edge_set(),
        s.f.clone(),
        s.cut,
        s.other,
        s.zmark,
    )
}

/// A member circuit of the chain: its anchor `[x, y]` on the host path and
/// the offside stretch running from `x` back to `y` away from the anchor.
#[derive(Debug, Clone)]
struct Member {
    c: Circuit,
    x: usize,
    y: usize,
    xpos: usize,
    ypos: usize,
    off: Path,
}

/// A chain of alternating circuits spanning the private run of `a`,
/// together with the frame it hangs on and the contraction history below
/// it.
#[derive(Debug, Clone)]
pub struct Cascade {
    g: Graph,
    f: EdgeSet,
    a: Circuit,
    b: Circuit,
    cut: Edge,
    other: Option<Edge>,
    zmark: Option<usize>,
    /// `a` cut open at `cut`, oriented so the marker comes before the
    /// private run.
    ap: Path,
    /// The private stretch of `b`, from `y0` to `x0`.
    p: Path,
    /// Last host position belonging to the contact zone.
    zone_to: usize,
    /// First host position where member anchors may start.
    rest_from: usize,
    /// Host position of `y0`, the start of the private run.
    spine_from: usize,
    /// Host position of `x0`, the end of the private run.
    spine_to: usize,
    members: Vec<Member>,
    strips: Vec<StripRecord>,
}

impl Cascade {
    /// Number of member circuits in the chain.
    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// How many pocket contractions the current level sits below.
    pub fn depth(&self) -> usize {
        self.strips.len()
    }

    /// The circuit pair at the current level.
    pub fn pair(&self) -> (&Circuit, &Circuit) {
        (&self.a, &self.b)
    }

    /// The 1-factor at the current level.
    pub fn factor(&self) -> &EdgeSet {
        &self.f
    }

    /// The graph at the current level.
    pub fn graph(&self) -> &Graph {
        &self.g
    }

    fn seed(&self) -> Seed {
        Seed {
            g: self.g.clone(),
            f: self.f.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            cut: self.cut,
            other: self.other,
            zmark: self.zmark,
            strips: self.strips.clone(),
        }
    }

    fn key(&self) -> StateKey {
        seed_key(&self.seed())
    }

    /// The two host edges at an interior position `q`, factor edge first.
    fn step_edges(&self, q: usize) -> Result<(Edge, Edge)> {
        if q == 0 || q >= self.ap.len() {
            return Err(internal!("window end sits on the host path boundary"));
        }
        let v = self.ap.verts();
        let left = Edge::new(v[q - 1], v[q]);
        let right = Edge::new(v[q], v[q + 1]);
        match (self.f.contains(&left), self.f.contains(&right)) {
            (true, false) => Ok((left, right)),
            (false, true) => Ok((right, left)),
            _ => Err(Error::HypothesisViolated(
                "the factor does not alternate through the host path".into(),
            )),
        }
    }
}

/// Build the level-0 cascade for a refined pair of a two-ear instance:
/// `a` is cut open at the first designated edge and the chain of member
/// circuits is chosen greedily along its private run.
pub fn build_cascade(
    inst: &TwoEarInstance,
    f: &EdgeSet,
    a: &Circuit,
    b: &Circuit,
    limits: &Limits,
) -> Result<Cascade> {
    grow(
        Seed {
            g: inst.g.clone(),
            f: f.clone(),
            a: a.clone(),
            b: b.clone(),
            cut: inst.e1,
            other: Some(inst.e2),
            zmark: None,
            strips: Vec::new(),
        },
        limits,
    )
}

fn grow(seed: Seed, limits: &Limits) -> Result<Cascade> {
    let c = frame(seed)?;
    build_members(c, limits)
}

/// Derive the frame from a seed: orient the host path, locate the private
/// run and the zone, and lay out the bridge. Members are left empty.
fn frame(seed: Seed) -> Result<Cascade> {
    let Seed {
        g,
        f,
        a,
        b,
        cut,
        other,
        zmark,
        strips,
    } = seed;
    if other.is_some() == zmark.is_some() {
        return Err(internal!(
            "a frame needs exactly one of a second designated edge or a merge vertex"
        ));
    }
    let ea = a.edge_set();
    let eb = b.edge_set();
    if !ea.contains(&cut) || !eb.contains(&cut) {
        return Err(internal!("both circuits must use the cut edge"));
    }
    if let Some(e2) = other {
        if !ea.contains(&e2) || !eb.contains(&e2) {
            return Err(internal!(
                "both circuits must use the second designated edge"
            ));
        }
    }
    if !matchings::is_alternating(&a, &f) || !matchings::is_alternating(&b, &f) {
        return Err(Error::HypothesisViolated(
            "the pair must alternate with the level factor".into(),
        ));
    }
    let spine_set: EdgeSet = ea.difference(&eb).copied().collect();
    let p_set: EdgeSet = eb.difference(&ea).copied().collect();
    if spine_set.is_empty() || p_set.is_empty() {
        return Err(Error::HypothesisViolated(
            "the pair must disagree on both sides".into(),
        ));
    }
    let mut ap = a
        .cut_at(cut)
        .ok_or_else(|| internal!("cut edge vanished from its circuit"))?;
    // The private run of `a` as a vertex span on the host path; it must be
    // one contiguous stretch.
    let run_span = |ap: &Path| -> Result<(usize, usize)> {
        let es = ap.edges();
        let hit: Vec<usize> = (0..es.len())
            .filter(|&i| spine_set.contains(&es[i]))
            .collect();
        let (lo, hi) = (hit[0], *hit.last().unwrap());
        if hi - lo + 1 != hit.len() {
            return Err(Error::HypothesisViolated(
                "the pair shares more than one maximal run".into(),
            ));
        }
        Ok((lo, hi + 1))
    };
    // Marker position: edge index of the second designated edge, or vertex
    // position of the merge vertex. It disambiguates the two ends of the
    // host path and must land strictly before the private run.
    let marker = |ap: &Path| -> Result<usize> {
        match (other, zmark) {
            (Some(e2), None) => ap
                .edges()
                .iter()
                .position(|&e| e == e2)
                .ok_or_else(|| internal!("second designated edge is off the host path")),
            (None, Some(z)) => ap
                .position(z)
                .ok_or_else(|| internal!("merge vertex is off the host path")),
            _ => unreachable!(),
        }
    };
    let (mut spine_from, mut spine_to) = run_span(&ap)?;
    let mut mp = marker(&ap)?;
    if mp >= spine_from {
        ap = ap.reversed();
        (spine_from, spine_to) = run_span(&ap)?;
        mp = marker(&ap)?;
        if mp >= spine_from {
            return Err(Error::HypothesisViolated(
                "the marker lands inside the private run".into(),
            ));
        }
    }
    let (zone_to, rest_from) = if other.is_some() {
        (mp, mp + 1)
    } else {
        (mp, mp)
    };
    let y0 = ap.verts()[spine_from];
    let x0 = ap.verts()[spine_to];
    let p = Path::from_edge_set(y0, &p_set).map_err(|_| {
        Error::HypothesisViolated("the bridge of the pair is not a single stretch".into())
    })?;
    if p.last() != x0 {
        return Err(Error::HypothesisViolated(
            "the bridge does not span the private run".into(),
        ));
    }
    let va: BTreeSet<usize> = a.verts().iter().copied().collect();
    if p.verts()[1..p.len()].iter().any(|v| va.contains(v)) {
        return Err(Error::HypothesisViolated(
            "the bridge revisits the host circuit".into(),
        ));
    }
    Ok(Cascade {
        g,
        f,
        a,
        b,
        cut,
        other,
        zmark,
        ap,
        p,
        zone_to,
        rest_from,
        spine_from,
        spine_to,
        members: Vec::new(),
        strips,
    })
}

/// Interior vertices of an offside stretch, in walk order.
fn off_interior(off: &Path) -> Vec<usize> {
    off.verts()[1..off.len()].to_vec()
}

/// Choose the member chain greedily: at each window end take, among the
/// alternating circuits of the level graph through the non-factor host
/// edge there, the one whose anchor reaches furthest along the host path.
fn build_members(mut c: Cascade, limits: &Limits) -> Result<Cascade> {
    let mut removed = vec![c.cut];
    if let Some(e2) = c.other {
        removed.push(e2);
    }
    let k = c.g.minus_edges(&removed);
    let pool = matchings::alternating_circuits_wrt(&k, &c.f, limits)?;
    let mut claimed: BTreeSet<usize> = BTreeSet::new();
    let mut prev_y_pos = c.spine_from;
    loop {
        if c.members.len() > c.ap.len() + 2 {
            return Err(internal!("member chain exceeded its natural bound"));
        }
        let (_, be) = c.step_edges(prev_y_pos)?;
        // Anchor-start window: the first anchor may begin anywhere past the
        // marker, later ones strictly between the previous two anchor ends.
        let lo = match c.members.len() {
            0 => c.rest_from,
            1 => c.spine_from + 1,
            n => c.members[n - 2].ypos + 1,
        };
        let mut best: Option<Member> = None;
        for cand in &pool {
            if !cand.edge_set().contains(&be) {
                continue;
            }
            let Some(m) = pick_member(&c, cand, prev_y_pos, lo, &claimed) else {
                continue;
            };
            let better = match &best {
                None => true,
                Some(cur) => m.ypos > cur.ypos || (m.ypos == cur.ypos && m.c < cur.c),
            };
            if better {
                best = Some(m);
            }
        }
        let Some(m) = best else {
            return Err(Error::HypothesisViolated(
                "no circuit extends the member chain".into(),
            ));
        };
        debug_assert!(
            c.other.is_none() || contact_ordering_with(&c.f, c.cut, c.other, &c.a, &m.c),
            "chain member breaks the contact ordering law"
        );
        claimed.extend(off_interior(&m.off));
        prev_y_pos = m.ypos;
        let done = m.ypos > c.spine_to;
        c.members.push(m);
        if done {
            return Ok(c);
        }
    }
}

/// Derive the anchors of one candidate within its window, or reject it.
fn pick_member(
    c: &Cascade,
    cand: &Circuit,
    prev_y_pos: usize,
    lo: usize,
    claimed: &BTreeSet<usize>,
) -> Option<Member> {
    let prev_y = c.ap.verts()[prev_y_pos];
    let (fe, _) = c.step_edges(prev_y_pos).ok()?;
    let mut cp = cand.cut_at(fe)?;
    if cp.first() != prev_y {
        cp = cp.reversed();
    }
    // x: earliest along the candidate among host vertices in the window.
    let (_, xv) = (lo..prev_y_pos)
        .filter_map(|q| {
            let v = c.ap.verts()[q];
            cp.position(v).map(|pc| (pc, v))
        })
        .min()?;
    // y: the host vertex past the window end closest to x along the
    // candidate, so the offside stretch picks up as little as possible.
    let xcp = cp.position(xv)?;
    let (_, _, yv) = ((prev_y_pos + 1)..=c.ap.len())
        .filter_map(|q| {
            let v = c.ap.verts()[q];
            cp.position(v).map(|pc| (pc.abs_diff(xcp), pc, v))
        })
        .min()?;
    let m = member_from_anchors(c, cand, prev_y_pos, xv, yv).ok()?;
    if off_interior(&m.off).iter().any(|v| claimed.contains(v)) {
        return None;
    }
    Some(m)
}

/// Split a candidate into anchor and offside at the given host vertices
/// and verify the exactness laws the chain depends on.
fn member_from_anchors(
    c: &Cascade,
    cand: &Circuit,
    prev_y_pos: usize,
    xv: usize,
    yv: usize,
) -> Result<Member> {
    let prev_y = c.ap.verts()[prev_y_pos];
    let (fe, _) = c.step_edges(prev_y_pos)?;
    let ec = cand.edge_set();
    if !ec.contains(&fe) {
        return Err(internal!("member misses the factor edge at its window"));
    }
    let mut cp = cand
        .cut_at(fe)
        .ok_or_else(|| internal!("factor edge vanished from the member"))?;
    if cp.first() != prev_y {
        cp = cp.reversed();
    }
    let xpos = c
        .ap
        .position(xv)
        .ok_or_else(|| internal!("anchor start is off the host path"))?;
    let ypos = c
        .ap
        .position(yv)
        .ok_or_else(|| internal!("anchor end is off the host path"))?;
    if !(xpos < prev_y_pos && prev_y_pos < ypos) {
        return Err(internal!("anchor does not straddle its window"));
    }
    let xcp = cp
        .position(xv)
        .ok_or_else(|| internal!("anchor start is off the member"))?;
    let ycp = cp
        .position(yv)
        .ok_or_else(|| internal!("anchor end is off the member"))?;
    let mut off = cp.slice(xcp.min(ycp), xcp.max(ycp));
    if off.first() != xv {
        off = off.reversed();
    }
    let anchor = c.ap.slice(xpos, ypos);
    let an = anchor.edge_set();
    if !an.iter().all(|e| ec.contains(e)) || !an.contains(&fe) {
        return Err(internal!("anchor strays off the member"));
    }
    let rest: EdgeSet = ec.difference(&an).copied().collect();
    if off.edge_set() != rest {
        return Err(internal!("member does not split into anchor and offside"));
    }
    // Exactness: past the zone the member meets the host path precisely
    // along its anchor, in vertices and in edges.
    let ef = c.zone_to + 1;
    for q in ef..=c.ap.len() {
        let on = cand.contains_vertex(c.ap.verts()[q]);
        if on != (q >= xpos && q <= ypos) {
            return Err(internal!("member touches the host path off its anchor"));
        }
    }
    for q in ef..c.ap.len() {
        let e = Edge::new(c.ap.verts()[q], c.ap.verts()[q + 1]);
        if ec.contains(&e) != (q >= xpos && q < ypos) {
            return Err(internal!("member uses a host edge off its anchor"));
        }
    }
    Ok(Member {
        c: cand.clone(),
        x: xv,
        y: yv,
        xpos,
        ypos,
        off,
    })
}

/// Re-derive the frame and install an explicit member chain (used after a
/// pocket contraction, where the old chain maps down instead of being
/// re-chosen).
fn grow_mapped(seed: Seed, anchors: &[(Circuit, usize, usize)]) -> Result<Cascade> {
    let mut c = frame(seed)?;
    let mut claimed: BTreeSet<usize> = BTreeSet::new();
    let mut prev_y_pos = c.spine_from;
    for (cand, xv, yv) in anchors {
        let m = member_from_anchors(&c, cand, prev_y_pos, *xv, *yv)?;
        if off_interior(&m.off).iter().any(|v| claimed.contains(v)) {
            return Err(internal!("mapped members overlap off the host path"));
        }
        claimed.extend(off_interior(&m.off));
        prev_y_pos = m.ypos;
        c.members.push(m);
    }
    match c.members.last() {
        Some(m) if m.ypos > c.spine_to => Ok(c),
        _ => Err(internal!("mapped member chain stops short")),
    }
}

/// One digit of a cascade's contact trace.
#[derive(Debug, Clone, PartialEq, Eq)]
struct TraceDigit {
    digit: u8,
    /// Owning member; connector digits carry the earlier of the two.
    member: usize,
    connector: bool,
    /// The vertices producing the digit, in walk order.
    run: Vec<usize>,
}

/// The digit string of a cascade. `0` marks the host stretch joining two
/// adjacent anchors, `1` a maximal run of contacts on the bridge interior,
/// `2` a maximal run of contacts in the zone before the marker.
#[derive(Debug, Clone)]
pub struct Trace {
    digits: Vec<TraceDigit>,
}

impl Trace {
    pub fn string(&self) -> String {
        self.digits
            .iter()
            .map(|d| char::from(b'0' + d.digit))
            .collect()
    }

    /// The string with the zone contacts dropped.
    pub fn reduced(&self) -> String {
        self.digits
            .iter()
            .filter(|d| d.digit != 2)
            .map(|d| char::from(b'0' + d.digit))
            .collect()
    }
}

/// Read the contact trace off a cascade: walk every member's offside
/// stretch from its anchor start and emit a digit per maximal run of
/// same-class contacts, with a connector digit between adjacent members.
pub fn trace_of(c: &Cascade) -> Trace {
    let pint: BTreeSet<usize> = c.p.verts()[1..c.p.len()].iter().copied().collect();
    let mut digits = Vec::new();
    for (i, m) in c.members.iter().enumerate() {
        if i > 0 {
            let prev = &c.members[i - 1];
            debug_assert!(m.xpos < prev.ypos, "adjacent anchors must overlap");
            debug_assert!(
                (m.xpos..prev.ypos).all(|q| q >= c.spine_from && q < c.spine_to),
                "connector must stay on the private run"
            );
            digits.push(TraceDigit {
                digit: 0,
                member: i - 1,
                connector: true,
                run: c.ap.slice(m.xpos, prev.ypos).verts().to_vec(),
            });
        }
        let mut run: Vec<usize> = Vec::new();
        let mut class = 0u8;
        for &v in &m.off.verts()[1..m.off.len()] {
            let cls = if c.ap.position(v).is_some_and(|q| q <= c.zone_to) {
                Some(2)
            } else if pint.contains(&v) {
                Some(1)
            } else {
                // Free vertices live entirely off the frame.
                debug_assert!(c.ap.position(v).is_none(), "free vertex on the host path");
                None
            };
            match cls {
                Some(d) if !run.is_empty() && class == d => run.push(v),
                Some(d) => {
                    if !run.is_empty() {
                        digits.push(TraceDigit {
                            digit: class,
                            member: i,
                            connector: false,
                            run: std::mem::take(&mut run),
                        });
                    }
                    class = d;
                    run.push(v);
                }
                None => {
                    if !run.is_empty() {
                        digits.push(TraceDigit {
                            digit: class,
                            member: i,
                            connector: false,
                            run: std::mem::take(&mut run),
                        });
                    }
                }
            }
        }
        if !run.is_empty() {
            digits.push(TraceDigit {
                digit: class,
                member: i,
                connector: false,
                run,
            });
        }
    }
    Trace { digits }
}

/// Caps must surface; any other failure only means the rewrite is not
/// available from this state.
fn gate(r: Result<Cascade>) -> Result<Option<Cascade>> {
    match r {
        Ok(c) => Ok(Some(c)),
        Err(e @ Error::EnumerationCapExceeded(_)) => Err(e),
        Err(_) => Ok(None),
    }
}

/// Try the local rewrites that erase an adjacent equal pair of digits,
/// scanning left to right. Returns the rebuilt cascade for the first one
/// that goes through.
fn try_surgery(c: &Cascade, t: &Trace, limits: &Limits) -> Result<Option<Cascade>> {
    for i in 0..t.digits.len().saturating_sub(1) {
        let (d0, d1) = (&t.digits[i], &t.digits[i + 1]);
        if d0.connector && d1.connector {
            // A member with no contacts sits between two connectors.
            if let Some(n) = gate(surgery_detached(c, d0.member + 1, limits))? {
                return Ok(Some(n));
            }
        }
        if !d0.connector && !d1.connector && d0.member == d1.member && d0.digit == d1.digit {
            let m = &c.members[d0.member];
            let v = *d0.run.last().unwrap();
            let w = d1.run[0];
            let r = match d0.digit {
                1 => surgery_bridge(c, m, v, w, limits),
                2 => surgery_zone(c, m, v, w, limits),
                _ => continue,
            };
            if let Some(n) = gate(r)? {
                return Ok(Some(n));
            }
        }
    }
    Ok(None)
}

/// A contact-free interior member meets neither the bridge nor the zone,
/// so exchanging the factor along it re-routes `a` over its offside while
/// leaving `b` untouched, shortening the chain by one.
fn surgery_detached(c: &Cascade, mi: usize, limits: &Limits) -> Result<Cascade> {
    if mi == 0 || mi + 1 >= c.members.len() {
        return Err(internal!("detached rewrite needs an interior member"));
    }
    let ec = c.members[mi].c.edge_set();
    let na = Circuit::from_edge_set(&sym_diff(&c.a.edge_set(), &ec))?;
    let mut seed = c.seed();
    seed.a = na;
    seed.f = sym_diff(&c.f, &ec);
    grow(seed, limits)
}

/// Two adjacent bridge runs of one member: close the bridge stretch
/// between them against the member's offside stretch and exchange the
/// factor along the resulting circuit, re-routing `b`.
fn surgery_bridge(c: &Cascade, m: &Member, v: usize, w: usize, limits: &Limits) -> Result<Cascade> {
    let ov = m
        .off
        .position(v)
        .ok_or_else(|| internal!("contact off its member"))?;
    let ow = m
        .off
        .position(w)
        .ok_or_else(|| internal!("contact off its member"))?;
    if ov >= ow {
        return Err(internal!("contacts out of walk order"));
    }
    let pv = c
        .p
        .position(v)
        .ok_or_else(|| internal!("contact off the bridge"))?;
    let pw = c
        .p
        .position(w)
        .ok_or_else(|| internal!("contact off the bridge"))?;
    let mut circ = m.off.slice(ov, ow).edge_set();
    circ.extend(c.p.slice(pv.min(pw), pv.max(pw)).edge_set());
    let x = Circuit::from_edge_set(&circ)?;
    if !matchings::is_alternating(&x, &c.f) {
        return Err(internal!("rewrite circuit does not alternate"));
    }
    let nb = Circuit::from_edge_set(&sym_diff(&c.b.edge_set(), &circ))?;
    let mut seed = c.seed();
    seed.b = nb;
    seed.f = sym_diff(&c.f, &circ);
    grow(seed, limits)
}

/// Two adjacent zone runs of one member: same exchange against the zone
/// stretch of the host path, which both circuits share, so `a` and `b`
/// are re-routed together.
fn surgery_zone(c: &Cascade, m: &Member, v: usize, w: usize, limits: &Limits) -> Result<Cascade> {
    let ov = m
        .off
        .position(v)
        .ok_or_else(|| internal!("contact off its member"))?;
    let ow = m
        .off
        .position(w)
        .ok_or_else(|| internal!("contact off its member"))?;
    if ov >= ow {
        return Err(internal!("contacts out of walk order"));
    }
    let qv = c
        .ap
        .position(v)
        .ok_or_else(|| internal!("contact off the zone"))?;
    let qw = c
        .ap
        .position(w)
        .ok_or_else(|| internal!("contact off the zone"))?;
    let mut circ = m.off.slice(ov, ow).edge_set();
    circ.extend(c.ap.slice(qv.min(qw), qv.max(qw)).edge_set());
    if circ.contains(&c.cut) || c.other.is_some_and(|e| circ.contains(&e)) {
        return Err(internal!("rewrite circuit swallows a designated edge"));
    }
    let x = Circuit::from_edge_set(&circ)?;
    if !matchings::is_alternating(&x, &c.f) {
        return Err(internal!("rewrite circuit does not alternate"));
    }
    let na = Circuit::from_edge_set(&sym_diff(&c.a.edge_set(), &circ))?;
    let nb = Circuit::from_edge_set(&sym_diff(&c.b.edge_set(), &circ))?;
    let mut seed = c.seed();
    seed.a = na;
    seed.b = nb;
    seed.f = sym_diff(&c.f, &circ);
    grow(seed, limits)
}

/// Contract the pocket enclosed between the first member's offside prefix
/// and the zone, descending one level. The pocket closes into an odd
/// circuit through the marker region; the whole state maps through the
/// contraction, with the merge vertex taking over as marker.
fn strip_leading(c: &Cascade, t: &Trace) -> Result<Cascade> {
    let d0 = t
        .digits
        .first()
        .ok_or_else(|| internal!("empty trace has no leading run"))?;
    if d0.connector || d0.digit != 2 || d0.member != 0 {
        return Err(internal!("leading digit is not a zone run"));
    }
    let m1 = &c.members[0];
    let xc = d0.run[0];
    let oc = m1
        .off
        .position(xc)
        .ok_or_else(|| internal!("zone contact off its member"))?;
    let qc = c
        .ap
        .position(xc)
        .ok_or_else(|| internal!("zone contact off the host path"))?;
    let mut zedges = m1.off.slice(0, oc).edge_set();
    zedges.extend(c.ap.slice(qc, m1.xpos).edge_set());
    let z = Circuit::from_edge_set(&zedges)?;
    if z.is_even() {
        return Err(Error::HypothesisViolated("pocket circuit is even".into()));
    }
    let vz: BTreeSet<usize> = z.verts().iter().copied().collect();
    let leaving = c
        .f
        .iter()
        .filter(|e| vz.contains(&e.u) != vz.contains(&e.v))
        .count();
    if leaving != 1 {
        return Err(Error::HypothesisViolated(
            "pocket must anchor exactly one factor edge".into(),
        ));
    }
    let con = c.g.contract_vertex_set(&vz)?;
    let cut1 = con
        .map_edge(c.cut)
        .ok_or_else(|| internal!("cut edge lost in the contraction"))?;
    if let Some(e2) = c.other {
        if con.map_edge(e2).is_some() {
            return Err(internal!(
                "second designated edge must vanish into the pocket"
            ));
        }
    }
    let map_set = |s: &EdgeSet| -> EdgeSet { s.iter().filter_map(|&e| con.map_edge(e)).collect() };
    let f1 = map_set(&c.f);
    if !matchings::is_one_factor(&con.graph, &f1) {
        return Err(Error::HypothesisViolated(
            "factor does not survive the contraction".into(),
        ));
    }
    let a1 = Circuit::from_edge_set(&map_set(&c.a.edge_set()))?;
    let b1 = Circuit::from_edge_set(&map_set(&c.b.edge_set()))?;
    let anchors: Vec<(Circuit, usize, usize)> = c
        .members
        .iter()
        .map(|m| {
            let cm = Circuit::from_edge_set(&map_set(&m.c.edge_set()))?;
            Ok((cm, con.vertex_map[m.x], con.vertex_map[m.y]))
        })
        .collect::<Result<_>>()?;
    let mut strips = c.strips.clone();
    let g1 = con.graph.clone();
    let zmark = Some(con.vertex);
    strips.push(StripRecord {
        x: z,
        con,
        g_before: c.g.clone(),
    });
    let next = grow_mapped(
        Seed {
            g: g1,
            f: f1,
            a: a1,
            b: b1,
            cut: cut1,
            other: None,
            zmark,
            strips,
        },
        &anchors,
    )?;
    debug_assert_eq!(next.depth(), c.depth() + 1);
    Ok(next)
}

/// Swap the designated edges' roles, re-cutting the frame at the other
/// one. Only meaningful while both are still present.
fn mirror_seed(c: &Cascade) -> Option<Seed> {
    let e2 = c.other?;
    let mut seed = c.seed();
    seed.cut = e2;
    seed.other = Some(c.cut);
    Some(seed)
}

/// Exchange the factor along one member circuit and re-route both host
/// circuits across it. Sound for the first and last members, whose
/// anchors reach into the stretches shared with `b`.
fn flip_seed(c: &Cascade, mi: usize) -> Option<Seed> {
    let ec = c.members[mi].c.edge_set();
    let na = Circuit::from_edge_set(&sym_diff(&c.a.edge_set(), &ec)).ok()?;
    let nb = Circuit::from_edge_set(&sym_diff(&c.b.edge_set(), &ec)).ok()?;
    let mut seed = c.seed();
    seed.a = na;
    seed.b = nb;
    seed.f = sym_diff(&c.f, &ec);
    Some(seed)
}

/// Replacement circuits for `b`: route along the marker-side prefix, the
/// bridge up to a member's first (or from its last) bridge contact, that
/// member's offside stretch, and back along the host path suffix.
fn reroute(c: &Cascade, m: &Member, xc: usize, head: bool) -> Option<Circuit> {
    let oc = m.off.position(xc)?;
    let pc = c.p.position(xc)?;
    let mut es = c.ap.slice(0, c.spine_from).edge_set();
    es.extend(c.p.slice(0, pc).edge_set());
    if head {
        es.extend(m.off.slice(0, oc).edge_set());
        es.extend(c.ap.slice(m.xpos, c.ap.len()).edge_set());
    } else {
        es.extend(m.off.slice(oc, m.off.len()).edge_set());
        es.extend(c.ap.slice(m.ypos, c.ap.len()).edge_set());
    }
    es.insert(c.cut);
    let nb = Circuit::from_edge_set(&es).ok()?;
    if !matchings::is_alternating(&nb, &c.f) {
        return None;
    }
    Some(nb)
}

/// Successor seeds from the re-routings licensed by a connector digit
/// adjacent to a bridge run: the replacement circuit splits the pair into
/// two new pairs, both pushed.
fn replacement_seeds(c: &Cascade, t: &Trace) -> Vec<Seed> {
    let mut out = Vec::new();
    let mut push_pair = |nb: Circuit| {
        let mut s1 = c.seed();
        s1.b = nb.clone();
        out.push(s1);
        let mut s2 = c.seed();
        s2.a = nb;
        out.push(s2);
    };
    for i in 0..t.digits.len().saturating_sub(1) {
        let (d0, d1) = (&t.digits[i], &t.digits[i + 1]);
        if d0.connector && !d1.connector && d1.digit == 1 && d1.member == d0.member + 1 {
            let m = &c.members[d1.member];
            if let Some(nb) = reroute(c, m, d1.run[0], true) {
                push_pair(nb);
            }
        }
        if !d0.connector && d0.digit == 1 && d1.connector && d1.member == d0.member {
            let m = &c.members[d0.member];
            if let Some(nb) = reroute(c, m, *d0.run.last().unwrap(), false) {
                push_pair(nb);
            }
        }
    }
    out
}

/// Drive a cascade toward a uniform trace: erase equal adjacent digits by
/// local rewrites, contract a leading zone pocket, re-cut at the other
/// designated edge for a trailing zone run, and flip detached end
/// members. Every step is verification-gated; the first one that fails is
/// skipped and the best state reached is returned. Only enumeration caps
/// escape as errors.
pub fn normalize_trace(c: Cascade, limits: &Limits) -> Result<Cascade> {
    let mut cur = c;
    let mut visited: BTreeSet<StateKey> = BTreeSet::new();
    for _ in 0..64 {
        if !visited.insert(cur.key()) {
            break;
        }
        let t = trace_of(&cur);
        if let Some(n) = try_surgery(&cur, &t, limits)? {
            cur = n;
            continue;
        }
        if t.digits
            .first()
            .is_some_and(|d| !d.connector && d.digit == 2 && d.member == 0)
        {
            if let Some(n) = gate(strip_leading(&cur, &t))? {
                cur = n;
                continue;
            }
        }
        if t.string() != "0" {
            let last_member = cur.members.len() - 1;
            if t.digits
                .last()
                .is_some_and(|d| !d.connector && d.digit == 2 && d.member == last_member)
            {
                if let Some(seed) = mirror_seed(&cur) {
                    if let Some(n) = gate(grow(seed, limits))? {
                        cur = n;
                        continue;
                    }
                }
            }
            if t.digits.first().is_some_and(|d| d.connector) {
                if let Some(seed) = flip_seed(&cur, 0) {
                    if let Some(n) = gate(grow(seed, limits))? {
                        cur = n;
                        continue;
                    }
                }
            }
            if t.digits.last().is_some_and(|d| d.connector) {
                if let Some(seed) = flip_seed(&cur, last_member) {
                    if let Some(n) = gate(grow(seed, limits))? {
                        cur = n;
                        continue;
                    }
                }
            }
        }
        break;
    }
    Ok(cur)
}

/// The vertex region around a reducible digit pattern, when one is
/// present: either the whole pair with both members of a lone-connector
/// trace, or the frame with two adjacent interior members contacting only
/// the zone.
fn pattern_region(c: &Cascade, t: &Trace) -> Option<BTreeSet<usize>> {
    if t.string() == "0" {
        debug_assert_eq!(c.members.len(), 2);
        let mut vs: BTreeSet<usize> = c.a.verts().iter().copied().collect();
        vs.extend(c.b.verts());
        for m in &c.members {
            vs.extend(m.c.verts());
        }
        return Some(vs);
    }
    let k = c.members.len();
    let pure_zone = |mi: usize| {
        let runs: Vec<&TraceDigit> = t
            .digits
            .iter()
            .filter(|d| !d.connector && d.member == mi)
            .collect();
        !runs.is_empty() && runs.iter().all(|d| d.digit == 2)
    };
    for j in 1..k.saturating_sub(2) {
        if pure_zone(j) && pure_zone(j + 1) {
            let mut vs: BTreeSet<usize> = c
                .ap
                .slice(0, c.spine_from)
                .verts()
                .iter()
                .copied()
                .collect();
            vs.extend(c.ap.slice(c.spine_to, c.ap.len()).verts());
            vs.extend(c.p.verts());
            vs.extend(c.members[j].c.verts());
            vs.extend(c.members[j + 1].c.verts());
            return Some(vs);
        }
    }
    None
}

/// Undo one pocket contraction on a witness: the pocket circuit joins the
/// subgraph and the head of the contraction stack, and the complementary
/// factor is recomputed from scratch one level up.
fn lift_through(rec: &StripRecord, w: K33Witness) -> Result<K33Witness> {
    let mut h = rec.x.edge_set();
    for &e in &w.h {
        h.insert(
            rec.con
                .least_preimage(e)
                .ok_or_else(|| internal!("witness edge has no source above the contraction"))?,
        );
    }
    let mut stack = vec![rec.x.clone()];
    stack.extend(w.contraction_stack);
    let hv: BTreeSet<usize> = h.iter().flat_map(|e| [e.u, e.v]).collect();
    let fc = matchings::complementary_factor_exists(&rec.g_before, &hv)
        .ok_or_else(|| internal!("no matching complements the lifted witness"))?;
    Ok(K33Witness {
        h,
        contraction_stack: stack,
        complement_factor: fc,
    })
}

/// Read a reducible pattern off a (normalized) cascade and turn it into a
/// verified witness for the original graph, undoing the recorded pocket
/// contractions on the way out.
pub fn extract_witness(c: &Cascade, limits: &Limits) -> Result<K33Witness> {
    let t = trace_of(c);
    if t.reduced().len() % 2 == 0 {
        return Err(Error::EvenReducedTrace);
    }
    let region =
        pattern_region(c, &t).ok_or_else(|| internal!("no reducible pattern in the trace"))?;
    let allowed: EdgeSet = c
        .g
        .edges()
        .iter()
        .copied()
        .filter(|e| region.contains(&e.u) && region.contains(&e.v))
        .collect();
    let mut w = search_structures(&c.g, Some(&allowed), limits)?
        .ok_or_else(|| internal!("pattern region contains no reducible structure"))?;
    for rec in c.strips.iter().rev() {
        w = lift_through(rec, w)?;
    }
    let g0 = c.strips.first().map_or(&c.g, |r| &r.g_before);
    if !verify_k33_witness(g0, &w) {
        return Err(internal!("lifted witness failed verification"));
    }
    Ok(w)
}

/// All the state transitions worth queueing from a normalized cascade:
/// the other pair order, the re-cut frame, factor flips at both ends and
/// the connector re-routings.
fn successor_seeds(c: &Cascade) -> Vec<Seed> {
    let mut out = Vec::new();
    let mut swapped = c.seed();
    std::mem::swap(&mut swapped.a, &mut swapped.b);
    out.push(swapped);
    if let Some(s) = mirror_seed(c) {
        out.push(s);
    }
    if let Some(s) = flip_seed(c, 0) {
        out.push(s);
    }
    if c.members.len() > 1 {
        if let Some(s) = flip_seed(c, c.members.len() - 1) {
            out.push(s);
        }
    }
    out.extend(replacement_seeds(c, &trace_of(c)));
    out
}

/// Queue-driven search for a reducibility witness across a mixed-parity
/// circuit family. Every even/odd pair is refined into the terminal shape
/// and seeded; each popped state is grown into a cascade, normalized, and
/// read for a pattern, with its transitions pushed as further states.
pub(super) fn search_witness(
    inst: &TwoEarInstance,
    o: &Orientation,
    evens: &[Circuit],
    odds: &[Circuit],
    limits: &Limits,
) -> Result<K33Witness> {
    let mut queue: VecDeque<Seed> = VecDeque::new();
    for x in evens {
        for y in odds {
            let refined = refine_pair(inst, o, x, y, limits)
                .and_then(|(a, b, fg)| reduce_to_single_arc(inst, o, &a, &b, &fg));
            match refined {
                Ok((a, b, fg)) => queue.push_back(Seed {
                    g: inst.g.clone(),
                    f: fg,
                    a,
                    b,
                    cut: inst.e1,
                    other: Some(inst.e2),
                    zmark: None,
                    strips: Vec::new(),
                }),
                Err(e @ Error::EnumerationCapExceeded(_)) => return Err(e),
                Err(_) => {}
            }
        }
    }
    let mut seen: BTreeSet<StateKey> = BTreeSet::new();
    let mut states: u64 = 0;
    let mut last: Option<Error> = None;
    while let Some(seed) = queue.pop_front() {
        if !seen.insert(seed_key(&seed)) {
            continue;
        }
        states += 1;
        if states > limits.max_witness_states {
            return Err(Error::EnumerationCapExceeded("witness search states"));
        }
        let grown = match grow(seed, limits) {
            Ok(c) => c,
            Err(e @ Error::EnumerationCapExceeded(_)) => return Err(e),
            Err(e) => {
                last = Some(e);
                continue;
            }
        };
        let cur = normalize_trace(grown, limits)?;
        match extract_witness(&cur, limits) {
            Ok(w) => return Ok(w),
            Err(e @ Error::EnumerationCapExceeded(_)) => return Err(e),
            Err(e) => last = Some(e),
        }
        for s in successor_seeds(&cur) {
            queue.push_back(s);
        }
    }
    Err(last.unwrap_or_else(|| internal!("no refinable pair seeded the witness search")))
}
