use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperbernardi::bernardi::{self, ProcessVariant};
use hyperbernardi::format::{parse_graph, sha256_hex};
use hyperbernardi::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph};
use hyperbernardi::harness::campaign::{self, FuzzConfig};
use hyperbernardi::harness::fixtures;
use hyperbernardi::harness::random::Bounds;
use hyperbernardi::hypertree::{
    degree_vector, enumerate_hypertrees, exterior_polynomial, interior_polynomial, is_hypertree, Hypertree,
    HypertreeSet,
};
use hyperbernardi::jaeger::{characterize_edge, emerald_order, jaeger_trees, violet_order};
use hyperbernardi::oracle::{brute_force_hypertrees, kirchhoff_count};
use hyperbernardi::{polytope, EdgeSet, Error};

const DEFAULT_MAX_EDGES: usize = 24;
const CAMPAIGN_MAX_EDGES: usize = 14;

#[derive(Parser)]
#[command(name = "hyperbernardi", version, about = "Bernardi processes, Jaeger trees and root polytopes of ribbon bipartite graphs")]
struct Cli {
    /// Graph document to read.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Use a built-in fixture instead of a file.
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Refuse graphs with more edges than this.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Worker threads for parallel campaigns.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a graph.
    Info,
    /// List the hypertrees on one side.
    Hypertrees {
        #[arg(long, default_value = "E", value_parser = parse_color)]
        side: Color,
        /// Enumerate by testing every edge subset instead.
        #[arg(long)]
        brute_force: bool,
    },
    /// Interior polynomial.
    Interior {
        #[arg(long, default_value = "E", value_parser = parse_color)]
        side: Color,
        /// Comma-separated node order; defaults to the order of the document.
        #[arg(long)]
        order: Option<String>,
    },
    /// Exterior polynomial.
    Exterior {
        #[arg(long, default_value = "E", value_parser = parse_color)]
        side: Color,
        #[arg(long)]
        order: Option<String>,
    },
    /// Run a Bernardi process on one hypertree, or on all of them.
    Bernardi {
        /// Hypertree as `node=value,...`; omit to run every hypertree.
        #[arg(long)]
        hypertree: Option<String>,
        #[arg(long, default_value = "htE-cutE")]
        variant: String,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Jaeger trees.
    Jaeger {
        #[arg(long, default_value = "V", value_parser = parse_color)]
        cut: Color,
        #[arg(long)]
        list: bool,
        /// Print the violet and emerald T-orders of every tree.
        #[arg(long)]
        orders: bool,
        /// Evaluate the five equivalent descriptions for every tree edge.
        #[arg(long)]
        characterize: bool,
    },
    /// Exact checks on the root polytope.
    Polytope {
        #[arg(long, value_enum)]
        verify: PolytopeCheck,
        #[arg(long, default_value = "V", value_parser = parse_color)]
        cut: Color,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Run every applicable check on one graph.
    Verify {
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Check the conjectured identities on seeded random graphs.
    Fuzz {
        /// Seed range `START..END`; overrides `--seed` and `--count`.
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long, default_value_t = 500)]
        count: u64,
        /// Maximum emerald nodes, violet nodes and edges.
        #[arg(long, default_value = "4,4,10")]
        bounds: String,
        /// Use subdivided ordinary graphs (vertices bounded by the second and edges by the
        /// third bound).
        #[arg(long)]
        graphs_only: bool,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolytopeCheck {
    Dissection,
    Triangulation,
    Shelling,
    Ehrhart,
    Kato,
}

fn parse_color(s: &str) -> Result<Color, String> {
    Color::parse(s).ok_or_else(|| format!("expected E or V, got `{s}`"))
}

/// Result of a command: text and JSON renderings and an exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let theorem = matches!(e.downcast_ref::<Error>(), Some(Error::Invariant(_)));
            ExitCode::from(if theorem { 1 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    if let Command::Fuzz { seeds, count, bounds, graphs_only, timing } = &cli.command {
        return fuzz(cli, seeds.as_deref(), *count, bounds, *graphs_only, *timing);
    }
    let (g, raw) = load_graph(cli)?;
    let limit = cli.max_edges.unwrap_or(match cli.command {
        Command::Verify { .. } => CAMPAIGN_MAX_EDGES,
        _ => DEFAULT_MAX_EDGES,
    });
    if g.edge_count() > limit {
        bail!("graph has {} edges, over the limit of {limit}; raise it with --max-edges", g.edge_count());
    }
    let mut out = match &cli.command {
        Command::Info => Ok(info(&g, &raw)),
        Command::Hypertrees { side, brute_force } => Ok(hypertrees(&g, *side, *brute_force)),
        Command::Interior { side, order } => polynomial(&g, *side, order.as_deref(), true),
        Command::Exterior { side, order } => polynomial(&g, *side, order.as_deref(), false),
        Command::Bernardi { hypertree, variant, trace } => bernardi_cmd(&g, hypertree.as_deref(), variant, *trace),
        Command::Jaeger { cut, list, orders, characterize } => jaeger_cmd(&g, *cut, *list, *orders, *characterize),
        Command::Polytope { verify, cut, kmax } => polytope_cmd(&g, *verify, *cut, *kmax),
        Command::Verify { timing } => verify(cli, &g, limit, *timing),
        Command::Fuzz { .. } => unreachable!(),
    }?;
    if let Value::Object(m) = &mut out.json {
        m.entry("tool_version").or_insert(json!(campaign::TOOL_VERSION));
        m.entry("seed").or_insert(json!(cli.seed));
        m.entry("input_hash").or_insert(json!(sha256_hex(&raw)));
    }
    Ok(out)
}

fn load_graph(cli: &Cli) -> Result<(RibbonBipartiteGraph, Vec<u8>)> {
    match (&cli.graph, &cli.fixture) {
        (Some(_), Some(_)) => bail!("give either --graph or --fixture, not both"),
        (Some(path), None) => {
            let raw = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let text = std::str::from_utf8(&raw).context("graph document is not UTF-8")?;
            let g = parse_graph(text).with_context(|| format!("parsing {}", path.display()))?;
            Ok((g, raw))
        }
        (None, Some(name)) => {
            let fx = fixtures::by_name(name).ok_or_else(|| {
                let names: Vec<&str> = fixtures::all().iter().map(|f| f.name).collect();
                anyhow!("unknown fixture `{name}`; available: {}", names.join(", "))
            })?;
            let raw = hyperbernardi::format::write_graph(&fx.graph).into_bytes();
            Ok((fx.graph, raw))
        }
        (None, None) => bail!("this command needs --graph FILE or --fixture NAME"),
    }
}

fn edge_names(g: &RibbonBipartiteGraph, es: impl IntoIterator<Item = EdgeId>) -> Vec<String> {
    es.into_iter().map(|e| g.edge_name(e).to_string()).collect()
}

fn node_names(g: &RibbonBipartiteGraph, xs: &[NodeId]) -> Vec<String> {
    xs.iter().map(|x| g.node_name(*x).to_string()).collect()
}

fn tree_names(g: &RibbonBipartiteGraph, t: EdgeSet) -> Vec<String> {
    edge_names(g, t.iter())
}

fn info(g: &RibbonBipartiteGraph, raw: &[u8]) -> Output {
    let em = node_names(g, &g.class(Color::Emerald));
    let vi = node_names(g, &g.class(Color::Violet));
    let trees = kirchhoff_count(g);
    let faces = g.faces().len();
    let json = json!({
        "input_hash": sha256_hex(raw),
        "emerald": em,
        "violet": vi,
        "edges": g.edge_count(),
        "base_node": g.node_name(g.base_node()),
        "base_edge": g.edge_name(g.base_edge()),
        "faces": faces,
        "genus": g.genus(),
        "spanning_trees": trees.to_string(),
        "parallel_edges": g.has_parallel_edges(),
        "subdivision": g.unsubdivide().is_some(),
    });
    let text = format!(
        "emerald ({}): {}\nviolet ({}): {}\nedges: {}\nbase: {} {}\nfaces: {}, genus {}\nspanning trees: {}\nparallel edges: {}\nsubdivided graph: {}\n",
        em.len(),
        em.join(" "),
        vi.len(),
        vi.join(" "),
        g.edge_count(),
        g.node_name(g.base_node()),
        g.edge_name(g.base_edge()),
        faces,
        g.genus(),
        trees,
        g.has_parallel_edges(),
        g.unsubdivide().is_some(),
    );
    Output::ok(text, json)
}

fn hypertrees(g: &RibbonBipartiteGraph, side: Color, brute: bool) -> Output {
    let list = if brute { brute_force_hypertrees(g, side) } else { enumerate_hypertrees(g, side) };
    let lits: Vec<String> = list.iter().map(|f| f.literal(g)).collect();
    let mut text = format!("{} hypertrees on {side}\n", lits.len());
    for l in &lits {
        text += &format!("  {l}\n");
    }
    Output::ok(text, json!({"side": side.to_string(), "count": lits.len(), "hypertrees": lits}))
}

fn parse_order(g: &RibbonBipartiteGraph, side: Color, s: &str) -> Result<Vec<NodeId>> {
    let order: Vec<NodeId> = s
        .split(',')
        .map(|n| g.node_by_name(n.trim()).ok_or_else(|| anyhow!("unknown node `{}`", n.trim())))
        .collect::<Result<_>>()?;
    let mut sorted = order.clone();
    sorted.sort();
    if sorted != g.class(side) {
        bail!("--order must list every {side} node exactly once");
    }
    Ok(order)
}

fn polynomial(g: &RibbonBipartiteGraph, side: Color, order: Option<&str>, interior: bool) -> Result<Output> {
    let order = order.map(|s| parse_order(g, side, s)).transpose()?;
    let p = if interior {
        interior_polynomial(g, side, order.as_deref())
    } else {
        exterior_polynomial(g, side, order.as_deref())
    };
    let used = order.unwrap_or_else(|| g.class(side));
    let kind = if interior { "interior" } else { "exterior" };
    Ok(Output::ok(
        format!("{kind} polynomial on {side}: {p}\n"),
        json!({"side": side.to_string(), "order": node_names(g, &used), kind: p, "text": p.to_string()}),
    ))
}

fn bernardi_cmd(g: &RibbonBipartiteGraph, hypertree: Option<&str>, variant: &str, trace: bool) -> Result<Output> {
    let variant: ProcessVariant = variant.parse()?;
    let side = variant.hypertree_side;
    let Some(lit) = hypertree else {
        let set = HypertreeSet::new(g, side);
        let mut rows = Vec::new();
        let mut text = format!("{variant} on {} hypertrees\n", set.len());
        for f in &set.list {
            let r = bernardi::run(g, f, variant)?;
            text += &format!("  {}  ->  {}\n", f.literal(g), tree_names(g, r.tree).join(" "));
            rows.push(json!({"hypertree": f.literal(g), "tree": tree_names(g, r.tree)}));
        }
        let (ie, ee) = bernardi::bernardi_polynomials_with(g, &set, variant.cut_side)?;
        let i = interior_polynomial(g, side, None);
        let x = exterior_polynomial(g, side, None);
        text += &format!("embedding interior {ie} (interior {i})\nembedding exterior {ee} (exterior {x})\n");
        return Ok(Output::ok(
            text,
            json!({
                "variant": variant.to_string(),
                "runs": rows,
                "embedding_interior": ie,
                "embedding_exterior": ee,
                "interior": i,
                "exterior": x,
            }),
        ));
    };
    let f = Hypertree::parse(g, lit)?;
    if f.side != side {
        bail!("variant {variant} needs a hypertree on {side} nodes");
    }
    if !is_hypertree(g, &f) {
        return Err(Error::NotHypertree(lit.to_string()).into());
    }
    let r = bernardi::run(g, &f, variant)?;
    let set = HypertreeSet::new(g, side);
    let acts = set.activities(g, &f, &r.class_order(g, side));
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "current": g.edge_name(s.current),
                "decision": s.decision,
                "forced": s.forced.map(|e| g.edge_name(e)),
            })
        })
        .collect();
    let order = node_names(g, &r.class_order(g, side));
    let mut text = String::new();
    if trace {
        for (i, s) in r.steps.iter().enumerate() {
            text += &format!("{:>3}  {:<12} {:?}", i + 1, g.edge_name(s.current), s.decision);
            if let Some(e) = s.forced {
                text += &format!("  then traverse {}", g.edge_name(e));
            }
            text.push('\n');
        }
    }
    text += &format!(
        "tree: {}\nclass order: {}\nembedding inactivities: internal {}, external {}\n",
        tree_names(g, r.tree).join(" "),
        order.join(" < "),
        acts.internal_inactive,
        acts.external_inactive
    );
    Ok(Output::ok(
        text,
        json!({
            "variant": variant.to_string(),
            "hypertree": f.literal(g),
            "tree": tree_names(g, r.tree),
            "class_order": order,
            "current_order": edge_names(g, r.current_order()),
            "internal_inactivity": acts.internal_inactive,
            "external_inactivity": acts.external_inactive,
            "steps": if trace { Value::Array(steps) } else { Value::Null },
        }),
    ))
}

fn jaeger_cmd(g: &RibbonBipartiteGraph, cut: Color, list: bool, orders: bool, characterize: bool) -> Result<Output> {
    if characterize && cut != Color::Violet {
        bail!("--characterize applies to V-cut trees");
    }
    let trees = jaeger_trees(g, cut);
    let set_e = HypertreeSet::new(g, Color::Emerald);
    let mut text = format!("{} {cut}-cut Jaeger trees\n", trees.len());
    let mut rows = Vec::new();
    let mut code = 0;
    for (i, t) in trees.iter().enumerate() {
        let mut row = json!({
            "tree": tree_names(g, *t),
            "hypertree_e": degree_vector(g, *t, Color::Emerald).literal(g),
            "hypertree_v": degree_vector(g, *t, Color::Violet).literal(g),
        });
        if list || orders || characterize {
            text += &format!("{:>3}. {}\n", i + 1, tree_names(g, *t).join(" "));
        }
        if orders {
            let vo = edge_names(g, violet_order(g, *t));
            let eo = edge_names(g, emerald_order(g, *t));
            text += &format!("     violet order:  {}\n     emerald order: {}\n", vo.join(" < "), eo.join(" < "));
            row["violet_order"] = json!(vo);
            row["emerald_order"] = json!(eo);
        }
        if characterize {
            let recs: Vec<_> = t.iter().map(|e| characterize_edge(g, *t, e, &trees[..i], &set_e)).collect();
            for r in &recs {
                text += &format!(
                    "     {:<12} {} {} {} {} {}{}\n",
                    g.edge_name(r.edge),
                    r.divergence as u8,
                    r.semi_passive as u8,
                    r.inactive_end as u8,
                    r.not_last as u8,
                    r.cut_shape as u8,
                    if r.agree() { "" } else { "  DISAGREE" }
                );
                if !r.agree() {
                    code = 1;
                }
            }
            row["characterization"] = json!(recs
                .iter()
                .map(|r| json!({"edge": g.edge_name(r.edge), "record": r, "agree": r.agree()}))
                .collect::<Vec<_>>());
        }
        rows.push(row);
    }
    Ok(Output { text, json: json!({"cut": cut.to_string(), "count": trees.len(), "trees": rows}), code })
}

fn polytope_cmd(g: &RibbonBipartiteGraph, check: PolytopeCheck, cut: Color, kmax: Option<usize>) -> Result<Output> {
    // E-cut trees of a graph are the V-cut trees of its transpose.
    let h = if cut == Color::Violet { g.clone() } else { g.transpose() };
    let trees = jaeger_trees(&h, Color::Violet);
    let interior = interior_polynomial(&h, Color::Emerald, None);
    let out = match check {
        PolytopeCheck::Dissection => {
            let mut reports = Vec::new();
            for s in [Color::Emerald, Color::Violet] {
                let set = HypertreeSet::new(&h, s);
                reports.push(polytope::check_dissection(&h, &trees, &set, s == Color::Emerald)?);
            }
            let ok = reports.iter().all(|r| r.ok());
            let r = &reports[0];
            let text = format!(
                "{} simplices, {} markers per side, {}/{} pairs certified, equal volumes: {}\ndissection: {}\n",
                r.trees,
                r.markers,
                r.pairs_certified,
                r.pairs_checked,
                r.equal_volumes,
                if ok { "yes" } else { "NO" }
            );
            Output { text, json: json!({"cut": cut.to_string(), "ok": ok, "markers_e": reports[0], "markers_v": reports[1]}), code: (!ok) as u8 }
        }
        PolytopeCheck::Triangulation => {
            let mut pair = None;
            'outer: for j in 0..trees.len() {
                for i in 0..j {
                    if polytope::incompatible(&h, trees[i], trees[j]) {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let witness = pair.map(|(i, j)| [tree_names(g, trees[i]), tree_names(g, trees[j])]);
            let text = match &witness {
                None => format!("{} simplices form a triangulation\n", trees.len()),
                Some([a, b]) => format!("not a triangulation; incompatible pair:\n  {}\n  {}\n", a.join(" "), b.join(" ")),
            };
            Output::ok(text, json!({"cut": cut.to_string(), "triangulation": pair.is_none(), "incompatible_pair": witness}))
        }
        PolytopeCheck::Shelling => {
            let r = polytope::check_shelling(&h, &trees, &interior, !h.has_parallel_edges())?;
            let text = format!(
                "h-vector {} (interior {})\nsemi-passive sets: {:?}\nshelling: {}\n",
                r.h_vector,
                interior,
                r.semi_passive_sets.iter().map(|s| tree_names(g, *s)).collect::<Vec<_>>(),
                if r.ok() { "yes" } else { "NO" }
            );
            let code = (!r.ok()) as u8;
            let json = json!({
                "cut": cut.to_string(),
                "ok": r.ok(),
                "h_vector": r.h_vector,
                "interior": interior,
                "semi_passive_sets": r.semi_passive_sets.iter().map(|s| tree_names(g, *s)).collect::<Vec<_>>(),
                "covered_sets": r.covered_sets.as_ref().map(|c| c.iter().map(|s| tree_names(g, *s)).collect::<Vec<_>>()),
                "mismatched_facets": r.semi_active_violations.iter().map(|(i, e)| json!({"tree": i, "edge": g.edge_name(*e)})).collect::<Vec<_>>(),
            });
            Output { text, json, code }
        }
        PolytopeCheck::Ehrhart | PolytopeCheck::Kato => {
            let d = polytope::dimension(&h);
            let k = kmax.unwrap_or(d + 5);
            let oracle = if h.edge_count() <= 6 { k.min(3) } else { 0 };
            let r = polytope::check_ehrhart(&h, &interior, k, oracle)?;
            let (ok, text) = if matches!(check, PolytopeCheck::Ehrhart) {
                (
                    r.fit_ok() && r.oracle_ok(),
                    format!("values {:?}\nfitted {:?}\ninterior {}\nmatch: {}\n", r.values, r.fitted, interior, r.fit_ok() && r.oracle_ok()),
                )
            } else {
                (
                    r.kato_ok(),
                    format!("I(x)/(1-x)^{} = {:?}\nvalues        {:?}\nmatch: {}\n", d + 1, r.kato_series, r.values, r.kato_ok()),
                )
            };
            Output { text, json: json!({"ok": ok, "report": r}), code: (!ok) as u8 }
        }
    };
    Ok(out)
}

fn verify(cli: &Cli, g: &RibbonBipartiteGraph, limit: usize, timing: bool) -> Result<Output> {
    let cfg = campaign::Config { seed: cli.seed, max_edges: limit, timing, ..Default::default() };
    let r = campaign::verify_all(g, &cfg)?;
    let code = r.status.exit_code() as u8;
    Ok(Output { text: r.summary(), json: serde_json::to_value(&r)?, code })
}

fn fuzz(cli: &Cli, seeds: Option<&str>, count: u64, bounds: &str, graphs_only: bool, timing: bool) -> Result<Output> {
    let (first_seed, count) = match seeds {
        None => (cli.seed, count),
        Some(s) => {
            let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("--seeds expects START..END"))?;
            let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
            if b < a {
                bail!("empty seed range {s}");
            }
            (a, b - a)
        }
    };
    let cfg = FuzzConfig { first_seed, count, bounds: Bounds::parse(bounds)?, graphs_only, timing };
    let r = campaign::fuzz(&cfg)?;
    let code = r.status.exit_code() as u8;
    Ok(Output { text: r.summary(), json: serde_json::to_value(&r)?, code })
}
