//! Command-line front end for the Pfaffian graph laboratory.
//!
//! Subcommands: `check` (decide Pfaffianness with a certificate either way),
//! `decompose` (ear or brick decomposition), `spaces` (GF(2) dimensions),
//! `witness` (reducibility witness search), `t5` (two-ear extension
//! decision), `verify` (re-check an emitted JSON certificate against the
//! input graph), `gen` (seeded instance generation).
//!
//! Exit codes: 0 = Pfaffian / success / certificate valid, 1 = non-Pfaffian /
//! witness found / certificate invalid, 2 = error (bad input, cap exceeded).

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pflab::decomposition::{self, DecompositionTree, EarDecomposition};
use pflab::graph::path::Circuit;
use pflab::oracle::{generate_graphs, GeneratorKind, InstanceRecipe};
use pflab::pfaffian::{self, IntractableSet, Orientation, PfaffianVerdict};
use pflab::witness::{
    self, decide_two_ear_extension, generate_two_ear_instances, K33Witness, TwoEarInstance,
    TwoEarVerdict,
};
use pflab::{gf2, Edge, EdgeSet, Error, Graph, Limits};

#[derive(Parser)]
#[command(
    name = "pflab",
    version,
    about = "Pfaffian graph laboratory: verdicts with checkable certificates",
    after_help = "Exit codes: 0 Pfaffian / success / valid, 1 non-Pfaffian / witness found / invalid, 2 error.\n\
                  Graphs are edge-list files: a header line `n m`, then one `u v` pair per line.\n\
                  Pass `-` to read the graph from stdin. PFLAB_THREADS overrides the worker count."
)]
struct Cli {
    /// Emit a machine-readable JSON certificate instead of a text report.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the generation commands (and anything randomized).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on enumerated 1-factors before giving up with an error.
    #[arg(long, global = true, value_name = "N")]
    cap_factors: Option<u64>,

    /// Cap on orientations visited by brute-force sweeps.
    #[arg(long, global = true, value_name = "N")]
    cap_orientations: Option<u64>,

    /// Deterministic mode: single worker thread, stable output ordering.
    #[arg(long, global = true)]
    reproducible: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the graph is Pfaffian; print the certificate.
    Check {
        /// Edge-list file (or `-` for stdin).
        graph: PathBuf,
    },
    /// Decompose a 1-extendible graph into ears or bricks.
    #[command(group = clap::ArgGroup::new("mode").required(true).args(["ears", "bricks"]))]
    Decompose {
        /// Build a (two-)ear decomposition guided by one 1-factor.
        #[arg(long)]
        ears: bool,
        /// Split along maximal barriers and 2-cuts down to bricks.
        #[arg(long)]
        bricks: bool,
        graph: PathBuf,
    },
    /// Report the GF(2) cycle-space and alternating-space dimensions.
    Spaces { graph: PathBuf },
    /// Search for a subgraph reducible to an even subdivision of K3,3
    /// whose complement has a 1-factor.
    Witness { graph: PathBuf },
    /// Decide a two-ear extension: a graph whose removal of two designated
    /// independent edges leaves a bipartite core with a 1-factor.
    T5 {
        graph: PathBuf,
        /// First designated edge, written `u,v` or `u-v`.
        #[arg(long, value_parser = parse_pair)]
        e1: (usize, usize),
        /// Second designated edge, written `u,v` or `u-v`.
        #[arg(long, value_parser = parse_pair)]
        e2: (usize, usize),
        /// Reference 1-factor of the core as `u-v,u-v,...`; defaults to the
        /// lexicographically least one.
        #[arg(long)]
        factor: Option<String>,
    },
    /// Re-check a JSON certificate against the input graph alone.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
    },
    /// Generate seeded graphs or two-ear instances.
    Gen {
        /// One of: bipartite-ears, two-ear, catalog.
        #[arg(long, default_value = "bipartite-ears")]
        kind: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_verts: usize,
        #[arg(long, default_value_t = 18)]
        max_edges: usize,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let cleaned = s.trim();
    let parts: Vec<&str> = cleaned
        .split(|c| c == ',' || c == '-' || c == ':')
        .map(str::trim)
        .collect();
    if parts.len() != 2 {
        return Err(format!("expected `u,v` or `u-v`, got {s:?}"));
    }
    let u: usize = parts[0].parse().map_err(|_| format!("bad vertex {:?}", parts[0]))?;
    let v: usize = parts[1].parse().map_err(|_| format!("bad vertex {:?}", parts[1]))?;
    if u == v {
        return Err("edge endpoints must differ".into());
    }
    Ok((u, v))
}

fn main() {
    // Die quietly when a pager or `head` closes the pipe early; the Rust
    // runtime masks SIGPIPE, which would turn that into a panic instead.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    init_threads(cli.reproducible);
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

/// Configure the global worker pool once, before any parallel work starts.
/// `--reproducible` pins everything to one thread so reduction orders (and
/// therefore all output bytes) cannot depend on scheduling.
fn init_threads(reproducible: bool) {
    let threads = if reproducible {
        1
    } else {
        std::env::var("PFLAB_THREADS")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .unwrap_or(0)
    };
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = cli.cap_factors {
        l.max_factors = n;
    }
    if let Some(n) = cli.cap_orientations {
        l.max_orientations = n;
    }
    l
}

fn load_graph(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading graph from stdin")?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Graph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    let lim = limits(cli);
    match &cli.cmd {
        Cmd::Check { graph } => cmd_check(cli, &load_graph(graph)?, &lim),
        Cmd::Decompose { ears, graph, .. } => {
            let g = load_graph(graph)?;
            if *ears {
                cmd_ears(cli, &g, &lim)
            } else {
                cmd_bricks(cli, &g, &lim)
            }
        }
        Cmd::Spaces { graph } => cmd_spaces(cli, &load_graph(graph)?, &lim),
        Cmd::Witness { graph } => cmd_witness(cli, &load_graph(graph)?, &lim),
        Cmd::T5 { graph, e1, e2, factor } => {
            cmd_t5(cli, load_graph(graph)?, *e1, *e2, factor.as_deref(), &lim)
        }
        Cmd::Verify { graph, certificate } => cmd_verify(&load_graph(graph)?, certificate, &lim),
        Cmd::Gen { kind, count, max_verts, max_edges } => {
            cmd_gen(cli, kind, *count, *max_verts, *max_edges)
        }
    }
}

// ---------------------------------------------------------------- check

fn cmd_check(cli: &Cli, g: &Graph, lim: &Limits) -> anyhow::Result<i32> {
    match pfaffian::decide_pfaffian(g, lim)? {
        PfaffianVerdict::Pfaffian(o) => {
            if cli.json {
                print_json(&json!({
                    "command": "check",
                    "verdict": "pfaffian",
                    "certificate": orientation_json(g, &o),
                }));
            } else {
                println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
                println!("verdict: Pfaffian");
                println!("orientation: {}", arrows(&o.directed_pairs(g)));
            }
            Ok(0)
        }
        PfaffianVerdict::NotPfaffian(s) => {
            if cli.json {
                print_json(&json!({
                    "command": "check",
                    "verdict": "non-pfaffian",
                    "certificate": intractable_json(&s),
                }));
            } else {
                println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
                println!("verdict: non-Pfaffian");
                println!("intractable set: {} alternating circuits over factor {}",
                    s.circuits.len(), edge_list(&s.factor));
                for c in &s.circuits {
                    println!("  circuit: {}", verts_list(c.verts()));
                }
            }
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------- decompose

fn cmd_ears(cli: &Cli, g: &Graph, lim: &Limits) -> anyhow::Result<i32> {
    let d = decomposition::ear_decomposition(g, lim)?;
    if cli.json {
        print_json(&json!({
            "command": "decompose",
            "mode": "ears",
            "certificate": ears_json(&d),
        }));
    } else {
        println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
        println!("factor: {}", edge_list(&d.factor));
        for (i, step) in d.steps.iter().enumerate() {
            let kinds = if step.ears.len() == 1 { "single ear" } else { "ear pair" };
            println!("step {}: {} via alternating circuit {}", i + 1, kinds,
                verts_list(step.circuit.verts()));
            for ear in &step.ears {
                println!("  ear: {}", verts_list(ear.verts()));
            }
        }
        println!("total ears: {} (cycle space dimension {})", d.ear_count(),
            gf2::cycle_space_dim(g));
        println!("two-ear steps: {}", d.two_ear_steps());
    }
    Ok(0)
}

fn cmd_bricks(cli: &Cli, g: &Graph, lim: &Limits) -> anyhow::Result<i32> {
    let (bricks, tree) = decomposition::brick_decompose(g, lim)?;
    if cli.json {
        print_json(&json!({
            "command": "decompose",
            "mode": "bricks",
            "brick_count": bricks.len(),
            "bricks": bricks.iter().map(graph_json).collect::<Vec<_>>(),
            "tree": tree_json(&tree),
        }));
    } else {
        println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
        println!("bricks: {}", bricks.len());
        print_tree(&tree, 0);
    }
    Ok(0)
}

fn print_tree(t: &DecompositionTree, depth: usize) {
    let pad = "  ".repeat(depth);
    match t {
        DecompositionTree::Brick(g) => {
            println!("{pad}brick: {} vertices, {} edges", g.support().len(), g.edge_count())
        }
        DecompositionTree::K2(_) => println!("{pad}K2 leaf"),
        DecompositionTree::Frame(g) => {
            println!("{pad}frame (bipartite): {} vertices, {} edges",
                g.support().len(), g.edge_count())
        }
        DecompositionTree::Barrier { barrier, children, .. } => {
            println!("{pad}barrier split at {}", verts_list(&barrier.iter().copied().collect::<Vec<_>>()));
            for c in children {
                print_tree(c, depth + 1);
            }
        }
        DecompositionTree::TwoCut { cut, children, .. } => {
            println!("{pad}tight 2-cut at ({}, {})", cut.0, cut.1);
            for c in children {
                print_tree(c, depth + 1);
            }
        }
    }
}

// ---------------------------------------------------------------- spaces

fn cmd_spaces(cli: &Cli, g: &Graph, lim: &Limits) -> anyhow::Result<i32> {
    let c = gf2::cycle_space_dim(g);
    let a = gf2::alternating_space_dimension(g, lim)?;
    if cli.json {
        print_json(&json!({
            "command": "spaces",
            "cycle_space_dim": c,
            "alternating_space_dim": a,
            "gap": c - a,
        }));
    } else {
        println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
        println!("cycle space dimension: {c}");
        println!("alternating space dimension: {a}");
        println!("gap: {}", c - a);
    }
    Ok(0)
}

// ---------------------------------------------------------------- witness

fn cmd_witness(cli: &Cli, g: &Graph, lim: &Limits) -> anyhow::Result<i32> {
    match witness::find_reducible_k33_witness(g, lim) {
        Ok(Some(w)) => {
            if cli.json {
                print_json(&json!({
                    "command": "witness",
                    "found": true,
                    "certificate": witness_json(&w),
                }));
            } else {
                print_witness_text(g, &w);
            }
            Ok(1)
        }
        Ok(None) => {
            if cli.json {
                print_json(&json!({
                    "command": "witness",
                    "found": false,
                    "reason": "exhaustive",
                }));
            } else {
                println!("none found (exhaustive)");
            }
            Ok(0)
        }
        Err(Error::EnumerationCapExceeded(what)) => {
            if cli.json {
                print_json(&json!({
                    "command": "witness",
                    "found": false,
                    "reason": "capped",
                    "detail": what,
                }));
            } else {
                println!("none found (capped: {what})");
            }
            Ok(2)
        }
        Err(e) => Err(e.into()),
    }
}

fn print_witness_text(g: &Graph, w: &K33Witness) {
    println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    println!("witness subgraph H: {} edges: {}", w.h.len(), edge_list(&w.h));
    match w.odd_circuit() {
        Some(c) => println!("odd circuit contracted: {}", verts_list(c.verts())),
        None => println!("odd circuit contracted: none (H is already an even subdivision)"),
    }
    println!("complement factor: {}", edge_list(&w.complement_factor));
}

// ---------------------------------------------------------------- t5

fn cmd_t5(
    cli: &Cli,
    g: Graph,
    e1: (usize, usize),
    e2: (usize, usize),
    factor: Option<&str>,
    lim: &Limits,
) -> anyhow::Result<i32> {
    let e1 = Edge::new(e1.0, e1.1);
    let e2 = Edge::new(e2.0, e2.1);
    let inst = match factor {
        Some(text) => {
            let f = parse_factor(text)?;
            TwoEarInstance::new(g, e1, e2, f, lim)?
        }
        None => TwoEarInstance::with_least_factor(g, e1, e2, lim)?,
    };
    let pair_ok = inst.satisfies_pair_condition();
    match decide_two_ear_extension(&inst, lim)? {
        TwoEarVerdict::Pfaffian(o) => {
            if cli.json {
                print_json(&json!({
                    "command": "t5",
                    "verdict": "pfaffian",
                    "satisfies_pair_condition": pair_ok,
                    "certificate": orientation_json(&inst.g, &o),
                }));
            } else {
                println!("two-ear extension: core plus {} and {}", show(e1), show(e2));
                println!("pair condition: {}", if pair_ok { "satisfied" } else { "violated (verdict still certified)" });
                println!("verdict: Pfaffian");
                println!("orientation: {}", arrows(&o.directed_pairs(&inst.g)));
            }
            Ok(0)
        }
        TwoEarVerdict::NonPfaffian(w) => {
            if cli.json {
                print_json(&json!({
                    "command": "t5",
                    "verdict": "non-pfaffian",
                    "satisfies_pair_condition": pair_ok,
                    "certificate": witness_json(&w),
                }));
            } else {
                println!("two-ear extension: core plus {} and {}", show(e1), show(e2));
                println!("pair condition: {}", if pair_ok { "satisfied" } else { "violated (verdict still certified)" });
                println!("verdict: non-Pfaffian");
                print_witness_text(&inst.g, &w);
            }
            Ok(1)
        }
    }
}

fn parse_factor(text: &str) -> anyhow::Result<EdgeSet> {
    let mut f = EdgeSet::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (u, v) = parse_pair(part).map_err(|e| anyhow!("bad factor edge {part:?}: {e}"))?;
        f.insert(Edge::new(u, v));
    }
    if f.is_empty() {
        bail!("factor must contain at least one edge");
    }
    Ok(f)
}

// ---------------------------------------------------------------- verify

/// Re-check an emitted certificate. Dispatches on the `type` tag inside the
/// JSON; accepts either a bare certificate or the full wrapped command
/// output. Exit 0 = valid, 1 = invalid, 2 = unusable input.
fn cmd_verify(g: &Graph, path: &PathBuf, lim: &Limits) -> anyhow::Result<i32> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let root: Value = serde_json::from_str(&text).context("certificate is not valid JSON")?;
    let cert = unwrap_certificate(&root)?;
    let kind = cert["type"].as_str().unwrap_or("");
    let ok = match kind {
        "orientation" => {
            let pairs = parse_pairs_field(&cert["directed_edges"])?;
            match Orientation::from_pairs(g, &pairs) {
                Ok(o) => pfaffian::verify_pfaffian_orientation(g, &o, lim)?,
                // An orientation that does not even fit the graph is invalid,
                // not a hard error: verification must terminate with a verdict.
                Err(_) => false,
            }
        }
        "intractable-set" => {
            let factor = parse_edges_field(&cert["factor"])?;
            let circuits = cert["circuits"]
                .as_array()
                .ok_or_else(|| anyhow!("missing circuits array"))?
                .iter()
                .map(parse_circuit_field)
                .collect::<anyhow::Result<Vec<_>>>()?;
            pfaffian::verify_intractable_set(g, &IntractableSet { factor, circuits })
        }
        "k33-witness" => {
            let h = parse_edges_field(&cert["H"])?;
            let complement_factor = parse_edges_field(&cert["complement_factor"])?;
            let contraction_stack = cert["contraction_stack"]
                .as_array()
                .ok_or_else(|| anyhow!("missing contraction_stack array"))?
                .iter()
                .map(parse_circuit_field)
                .collect::<anyhow::Result<Vec<_>>>()?;
            witness::verify_k33_witness(g, &K33Witness { h, contraction_stack, complement_factor })
        }
        other => bail!("unknown certificate type {other:?}"),
    };
    if ok {
        println!("certificate: VALID ({kind})");
        Ok(0)
    } else {
        println!("certificate: INVALID ({kind})");
        Ok(1)
    }
}

/// Find the actual certificate object: either the root itself or nested
/// under the wrapper keys the other subcommands emit.
fn unwrap_certificate(root: &Value) -> anyhow::Result<&Value> {
    if root["type"].is_string() {
        return Ok(root);
    }
    let inner = &root["certificate"];
    if inner["type"].is_string() {
        return Ok(inner);
    }
    bail!("no certificate found: expected a `type` tag at the top level or under `certificate`")
}

fn parse_pairs_field(v: &Value) -> anyhow::Result<Vec<(usize, usize)>> {
    v.as_array()
        .ok_or_else(|| anyhow!("expected an array of [u, v] pairs"))?
        .iter()
        .map(|p| {
            let pair = p.as_array().filter(|a| a.len() == 2)
                .ok_or_else(|| anyhow!("expected [u, v], got {p}"))?;
            let u = pair[0].as_u64().ok_or_else(|| anyhow!("bad vertex {}", pair[0]))? as usize;
            let v = pair[1].as_u64().ok_or_else(|| anyhow!("bad vertex {}", pair[1]))? as usize;
            Ok((u, v))
        })
        .collect()
}

fn parse_edges_field(v: &Value) -> anyhow::Result<EdgeSet> {
    let pairs = parse_pairs_field(v)?;
    let mut set = EdgeSet::new();
    for (u, v) in pairs {
        if u == v {
            bail!("loop edge at vertex {u}");
        }
        set.insert(Edge::new(u, v));
    }
    Ok(set)
}

fn parse_circuit_field(v: &Value) -> anyhow::Result<Circuit> {
    let verts: Vec<usize> = v
        .as_array()
        .ok_or_else(|| anyhow!("expected a vertex cycle array"))?
        .iter()
        .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| anyhow!("bad vertex {x}")))
        .collect::<anyhow::Result<_>>()?;
    if verts.len() < 3 {
        bail!("a circuit needs at least 3 vertices, got {}", verts.len());
    }
    let distinct: BTreeSet<usize> = verts.iter().copied().collect();
    if distinct.len() != verts.len() {
        bail!("circuit repeats a vertex");
    }
    Ok(Circuit::from_vertex_cycle(&verts))
}

// ---------------------------------------------------------------- gen

fn cmd_gen(
    cli: &Cli,
    kind: &str,
    count: usize,
    max_verts: usize,
    max_edges: usize,
) -> anyhow::Result<i32> {
    let recipe = |k| InstanceRecipe {
        kind: k,
        seed: cli.seed,
        count,
        max_verts,
        max_edges,
    };
    match kind {
        "two-ear" => {
            let instances = generate_two_ear_instances(&recipe(GeneratorKind::RandomTwoEarAdjunction));
            if cli.json {
                let items: Vec<Value> = instances.iter().map(instance_json).collect();
                print_json(&json!({ "command": "gen", "kind": kind, "instances": items }));
            } else {
                for (i, inst) in instances.iter().enumerate() {
                    println!("# instance {i}");
                    print!("{}", inst.g.to_edge_list());
                    println!("e1: {}", show(inst.e1));
                    println!("e2: {}", show(inst.e2));
                    println!("factor: {}", edge_list(&inst.f));
                    println!("pair condition: {}", if inst.satisfies_pair_condition() {
                        "satisfied"
                    } else {
                        "violated"
                    });
                    println!();
                }
            }
        }
        "bipartite-ears" | "catalog" => {
            let k = if kind == "catalog" {
                GeneratorKind::Catalog
            } else {
                GeneratorKind::RandomBipartiteEars
            };
            let graphs = generate_graphs(&recipe(k));
            if cli.json {
                let items: Vec<Value> = graphs.iter().map(graph_json).collect();
                print_json(&json!({ "command": "gen", "kind": kind, "graphs": items }));
            } else {
                for (i, g) in graphs.iter().enumerate() {
                    println!("# graph {i}");
                    print!("{}", g.to_edge_list());
                    println!();
                }
            }
        }
        other => bail!("unknown generator kind {other:?} (try bipartite-ears, two-ear, catalog)"),
    }
    Ok(0)
}

// ---------------------------------------------------------------- JSON shapes

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn edges_json<'a, I: IntoIterator<Item = &'a Edge>>(edges: I) -> Value {
    Value::Array(edges.into_iter().map(|e| json!([e.u, e.v])).collect())
}

fn orientation_json(g: &Graph, o: &Orientation) -> Value {
    json!({
        "type": "orientation",
        "directed_edges": o.directed_pairs(g),
    })
}

fn intractable_json(s: &IntractableSet) -> Value {
    json!({
        "type": "intractable-set",
        "factor": edges_json(&s.factor),
        "circuits": s.circuits.iter().map(|c| json!(c.verts())).collect::<Vec<_>>(),
    })
}

fn witness_json(w: &K33Witness) -> Value {
    json!({
        "type": "k33-witness",
        "H": edges_json(&w.h),
        "odd_circuit": w.odd_circuit().map(|c| json!(c.verts())),
        "contraction_stack": w.contraction_stack.iter().map(|c| json!(c.verts())).collect::<Vec<_>>(),
        "complement_factor": edges_json(&w.complement_factor),
    })
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": edges_json(g.edges()),
    })
}

fn instance_json(inst: &TwoEarInstance) -> Value {
    json!({
        "graph": graph_json(&inst.g),
        "e1": [inst.e1.u, inst.e1.v],
        "e2": [inst.e2.u, inst.e2.v],
        "factor": edges_json(&inst.f),
        "satisfies_pair_condition": inst.satisfies_pair_condition(),
    })
}

fn ears_json(d: &EarDecomposition) -> Value {
    json!({
        "type": "ear-decomposition",
        "factor": edges_json(&d.factor),
        "steps": d.steps.iter().map(|s| json!({
            "circuit": s.circuit.verts(),
            "ears": s.ears.iter().map(|p| json!(p.verts())).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "ear_count": d.ear_count(),
        "two_ear_steps": d.two_ear_steps(),
    })
}

fn tree_json(t: &DecompositionTree) -> Value {
    match t {
        DecompositionTree::Brick(g) => json!({ "kind": "brick", "graph": graph_json(g) }),
        DecompositionTree::K2(g) => json!({ "kind": "k2", "graph": graph_json(g) }),
        DecompositionTree::Frame(g) => json!({ "kind": "frame", "graph": graph_json(g) }),
        DecompositionTree::Barrier { barrier, children, .. } => json!({
            "kind": "barrier",
            "barrier": barrier.iter().copied().collect::<Vec<_>>(),
            "children": children.iter().map(tree_json).collect::<Vec<_>>(),
        }),
        DecompositionTree::TwoCut { cut, children, .. } => json!({
            "kind": "two-cut",
            "cut": [cut.0, cut.1],
            "children": children.iter().map(tree_json).collect::<Vec<_>>(),
        }),
    }
}

// ---------------------------------------------------------------- text helpers

fn show(e: Edge) -> String {
    format!("{}-{}", e.u, e.v)
}

fn edge_list<'a, I: IntoIterator<Item = &'a Edge>>(edges: I) -> String {
    let parts: Vec<String> = edges.into_iter().map(|&e| show(e)).collect();
    if parts.is_empty() {
        "(empty)".into()
    } else {
        parts.join(" ")
    }
}

fn verts_list(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn arrows(pairs: &[(usize, usize)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    parts.join(" ")
}
