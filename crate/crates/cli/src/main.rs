use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::LazyLock;

use causal_topology::bench::{
    make_dataset_a, make_dataset_b, run_experiment_grid, ExperimentConfig, Representation, WalkParams,
};
use causal_topology::gen::RngSeed;
use causal_topology::io::{parse_temporal_graph, write_csv, Format};
use causal_topology::iso::{
    brute_force_trp_iso, consistent_event_graph_iso, time_aggregated_iso, time_concatenated_iso, timewise_iso,
    IsoResult, SearchBudget, SizeCap, Verdict,
};
use causal_topology::repr::{self, ComponentClass, CompressOptions, EVENT_LABEL};
use causal_topology::temporal::{enumerate_time_respecting_paths, temporal_reachability};
use causal_topology::wl::{first_distinguishing_round, wl_fingerprint, ColorDictionary, Direction, WlOptions};
use causal_topology::{Delta, StaticGraph, TemporalGraph, FORMAT_VERSION, VERSION};
use clap::{Args, Parser, Subcommand, ValueEnum};

static LONG_VERSION: LazyLock<String> = LazyLock::new(|| {
    format!(
        "{} (causal-topology {VERSION}, format {FORMAT_VERSION})",
        env!("CARGO_PKG_VERSION")
    )
});

#[derive(Parser)]
#[command(name = "ctopo", about = "Causal topology of temporal graphs", version = LONG_VERSION.as_str())]
struct Cli {
    /// Seed for every random choice; drawn from entropy and printed when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a static representation of a temporal graph.
    Transform(TransformArgs),
    /// List time-respecting paths.
    Paths(PathsArgs),
    /// Nodes reachable from a source by time-respecting paths.
    Reach(ReachArgs),
    /// Test two temporal graphs for isomorphism (exit 0 yes, 1 no, 2 error).
    Iso(IsoArgs),
    /// Compare two graphs with directed WL refinement (exit 0 same, 1 distinguished).
    WlCompare(WlCompareArgs),
    /// Write a synthetic dataset as one CSV per graph plus manifest.json.
    Generate(GenerateArgs),
    /// Run a classification experiment grid from a JSON config.
    Experiment(ExperimentArgs),
    /// Write the WL fingerprint of a graph as JSON.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReprKind {
    Event,
    Augmented,
    Compressed,
    Aggregated,
    Concatenated,
    Snapshots,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Dot,
    Json,
    Csv,
}

#[derive(Args)]
struct Input {
    /// Edge list (`src,dst,t` CSV, or NDJSON for .ndjson/.jsonl files).
    input: PathBuf,
    /// Override format detection.
    #[arg(long, value_parser = ["csv", "ndjson"])]
    input_format: Option<String>,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum)]
    repr: ReprKind,
    #[arg(long)]
    delta: Option<i64>,
    /// Weight incidence arcs of compressed graphs by class size.
    #[arg(long)]
    weighted_incidence: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
    /// Output file; the representation goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PathsArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    delta: i64,
    #[arg(long)]
    max_len: Option<usize>,
    /// Fail once more than this many paths would be listed.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct ReachArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    delta: i64,
    /// Source node name.
    #[arg(long)]
    source: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IsoMode {
    TrpOracle,
    Consistent,
    Aggregated,
    Concatenated,
    Timewise,
}

#[derive(Args)]
struct IsoArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long, value_enum)]
    mode: IsoMode,
    #[arg(long)]
    delta: Option<i64>,
    /// Maximum number of search nodes expanded.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes_expanded)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FeatureRepr {
    Compressed,
    Augmented,
    Event,
    Aggregated,
}

impl From<FeatureRepr> for Representation {
    fn from(r: FeatureRepr) -> Self {
        match r {
            FeatureRepr::Compressed => Representation::CompressedAugmented,
            FeatureRepr::Augmented => Representation::Augmented,
            FeatureRepr::Event => Representation::Event,
            FeatureRepr::Aggregated => Representation::Aggregated,
        }
    }
}

#[derive(Args)]
struct WlArgs {
    #[arg(long, value_enum, default_value = "compressed")]
    repr: FeatureRepr,
    #[arg(long, default_value_t = 1)]
    delta: i64,
    #[arg(long, default_value_t = 3)]
    iterations: usize,
    /// Merge in- and out-neighbors.
    #[arg(long)]
    undirected: bool,
    /// Ignore edge weights.
    #[arg(long)]
    unweighted: bool,
}

impl WlArgs {
    fn options(&self) -> WlOptions {
        WlOptions {
            direction: if self.undirected {
                Direction::Undirected
            } else {
                Direction::Directed
            },
            use_weights: !self.unweighted,
        }
    }
}

#[derive(Args)]
struct WlCompareArgs {
    first: PathBuf,
    second: PathBuf,
    #[command(flatten)]
    wl: WlArgs,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    wl: WlArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DatasetChoice {
    /// Shuffled timestamps for class 1.
    A,
    /// Community-biased walks.
    B,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    dataset: DatasetChoice,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    sigma0: f64,
    #[arg(long, default_value_t = 0.9)]
    sigma1: f64,
    #[arg(long, default_value_t = 125)]
    graphs_per_class: usize,
    #[arg(long, default_value_t = WalkParams::default().num_walks)]
    num_walks: usize,
    #[arg(long, default_value_t = WalkParams::default().walk_len)]
    walk_len: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Maximum number of worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

type CmdResult = Result<ExitCode, String>;

fn read_graph(path: &Path, format: Option<&str>) -> Result<TemporalGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let format = match format {
        Some(f) => f.parse()?,
        None => Format::from_path(&path.to_string_lossy()),
    };
    parse_temporal_graph(&text, format).map_err(|e| format!("{}: {e}", path.display()))
}

fn delta(value: Option<i64>, what: &str) -> Result<Delta, String> {
    let v = value.ok_or_else(|| format!("--delta is required for {what}"))?;
    Delta::new(v).map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(g: &StaticGraph, source: &TemporalGraph, format: OutFormat) -> String {
    match format {
        OutFormat::Dot => g.to_dot(Some(source)),
        OutFormat::Json => format!("{:#}\n", g.to_json()),
        OutFormat::Csv => g.to_csv(Some(source)),
    }
}

fn class_summary(g: &StaticGraph, classes: &[ComponentClass]) -> String {
    let mut by_size: BTreeMap<u64, usize> = BTreeMap::new();
    for c in classes {
        *by_size.entry(c.cardinality).or_default() += 1;
    }
    let parts: Vec<String> = by_size
        .iter()
        .rev()
        .map(|(size, n)| format!("{n} {} ×{size}", if *n == 1 { "class" } else { "classes" }))
        .collect();
    format!("{} event nodes, {}", g.count_label(EVENT_LABEL), parts.join(", "))
}

fn transform(args: TransformArgs) -> CmdResult {
    let g = read_graph(&args.input.input, args.input.input_format.as_deref())?;
    let (text, summary) = match args.repr {
        ReprKind::Event | ReprKind::Augmented | ReprKind::Compressed => {
            let d = delta(args.delta, "this representation")?;
            match args.repr {
                ReprKind::Event => {
                    let s = repr::build_event_graph(&g, d);
                    let summary = format!("{} event nodes, {} arcs", s.num_nodes(), s.num_edges());
                    (render(&s, &g, args.format), summary)
                }
                ReprKind::Augmented => {
                    let s = repr::build_augmented_event_graph(&g, d);
                    let summary = format!("{} nodes, {} edges", s.num_nodes(), s.num_edges());
                    (render(&s, &g, args.format), summary)
                }
                _ => {
                    let opts = CompressOptions {
                        weighted_incidence: args.weighted_incidence,
                    };
                    let (s, classes) = repr::build_compressed_augmented_event_graph(&g, d, opts);
                    (render(&s, &g, args.format), class_summary(&s, &classes))
                }
            }
        }
        ReprKind::Aggregated => {
            let s = repr::build_time_aggregated(&g);
            let summary = format!(
                "{} nodes, {} edges, total weight {}",
                s.num_nodes(),
                s.num_edges(),
                s.total_weight()
            );
            (render(&s, &g, args.format), summary)
        }
        ReprKind::Concatenated => {
            let (s, ann) = repr::build_time_concatenated(&g).map_err(|e| e.to_string())?;
            let summary = format!("{} nodes, {} edges, t_min {}", s.num_nodes(), s.num_edges(), ann.t_min);
            let text = match args.format {
                OutFormat::Dot => s.to_dot(Some(&g)),
                OutFormat::Json => {
                    let offsets: Vec<_> = ann
                        .offsets
                        .iter()
                        .map(|(&(u, v), ts)| serde_json::json!({"src": u, "dst": v, "offsets": ts}))
                        .collect();
                    let v = serde_json::json!({"graph": s.to_json(), "t_min": ann.t_min, "offsets": offsets});
                    format!("{v:#}\n")
                }
                OutFormat::Csv => {
                    let mut out = String::from("src,dst,offsets\n");
                    for ((u, v), ts) in &ann.offsets {
                        let ts: Vec<String> = ts.iter().map(i64::to_string).collect();
                        let _ = writeln!(
                            out,
                            "{},{},{}",
                            s.node_display(*u, Some(&g)),
                            s.node_display(*v, Some(&g)),
                            ts.join(";")
                        );
                    }
                    out
                }
            };
            (text, summary)
        }
        ReprKind::Snapshots => {
            let seq = repr::to_snapshots(&g).map_err(|e| e.to_string())?;
            let summary = format!("{} snapshots over {} nodes", seq.len(), seq.num_nodes());
            let name = |v| g.node_name(v);
            let text = match args.format {
                OutFormat::Dot => return Err("snapshots support --format json or csv".into()),
                OutFormat::Json => {
                    let snaps: Vec<_> = seq
                        .snapshots()
                        .iter()
                        .map(|s| {
                            let edges: Vec<_> = s.edges.iter().map(|&(u, v)| [name(u), name(v)]).collect();
                            serde_json::json!({"t": s.t, "edges": edges})
                        })
                        .collect();
                    format!("{:#}\n", serde_json::Value::Array(snaps))
                }
                OutFormat::Csv => {
                    let mut out = String::from("t,src,dst\n");
                    for s in seq.snapshots() {
                        for &(u, v) in &s.edges {
                            let _ = writeln!(out, "{},{},{}", s.t, name(u), name(v));
                        }
                    }
                    out
                }
            };
            (text, summary)
        }
    };
    match &args.out {
        Some(_) => {
            emit(args.out.as_deref(), &text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn paths(args: PathsArgs) -> CmdResult {
    let g = read_graph(&args.input.input, args.input.input_format.as_deref())?;
    let d = delta(Some(args.delta), "paths")?;
    let paths = enumerate_time_respecting_paths(&g, d, args.max_len, args.budget).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for p in &paths {
        let labels: Vec<String> = p.edges.iter().map(|e| g.edge_label(e)).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    print!("{out}");
    eprintln!("{} paths", paths.len());
    Ok(ExitCode::SUCCESS)
}

fn reach(args: ReachArgs) -> CmdResult {
    let g = read_graph(&args.input.input, args.input.input_format.as_deref())?;
    let d = delta(Some(args.delta), "reach")?;
    let source = g
        .node_by_name(&args.source)
        .ok_or_else(|| format!("unknown node {:?}", args.source))?;
    for v in temporal_reachability(&g, d, source).map_err(|e| e.to_string())? {
        println!("{}", g.node_name(v));
    }
    Ok(ExitCode::SUCCESS)
}

fn iso(args: IsoArgs) -> CmdResult {
    let g1 = read_graph(&args.first, None)?;
    let g2 = read_graph(&args.second, None)?;
    let budget = SearchBudget::new(args.budget);
    let needs_delta = matches!(args.mode, IsoMode::TrpOracle | IsoMode::Consistent);
    let d = if needs_delta {
        Some(delta(args.delta, "this mode")?)
    } else {
        None
    };
    let result: IsoResult = match args.mode {
        IsoMode::TrpOracle => brute_force_trp_iso(&g1, &g2, d.expect("checked"), SizeCap::default()),
        IsoMode::Consistent => consistent_event_graph_iso(&g1, &g2, d.expect("checked"), budget),
        IsoMode::Aggregated => time_aggregated_iso(&g1, &g2, budget),
        IsoMode::Concatenated => time_concatenated_iso(&g1, &g2, budget),
        IsoMode::Timewise => {
            let s1 = repr::to_snapshots(&g1).map_err(|e| e.to_string())?;
            let s2 = repr::to_snapshots(&g2).map_err(|e| e.to_string())?;
            timewise_iso(&s1, &s2, budget)
        }
    }
    .map_err(|e| e.to_string())?;
    println!("{:#}", result.to_json(Some(&g1), Some(&g2)));
    Ok(match result.verdict {
        Verdict::Isomorphic => ExitCode::SUCCESS,
        Verdict::NotIsomorphic => ExitCode::from(1),
        Verdict::BudgetExceeded => ExitCode::from(2),
    })
}

fn wl_compare(args: WlCompareArgs) -> CmdResult {
    let g1 = read_graph(&args.first, None)?;
    let g2 = read_graph(&args.second, None)?;
    let d = delta(Some(args.wl.delta), "wl-compare")?;
    let r: Representation = args.wl.repr.into();
    let round = first_distinguishing_round(
        &r.build(&g1, d),
        &r.build(&g2, d),
        args.wl.iterations,
        args.wl.options(),
    );
    let v = serde_json::json!({
        "representation": r.name(),
        "iterations": args.wl.iterations,
        "distinguished": round.is_some(),
        "first_round": round,
    });
    println!("{v:#}");
    Ok(if round.is_some() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn export(args: ExportArgs) -> CmdResult {
    let g = read_graph(&args.input.input, args.input.input_format.as_deref())?;
    let d = delta(Some(args.wl.delta), "export")?;
    let r: Representation = args.wl.repr.into();
    let mut dict = ColorDictionary::new();
    let f = wl_fingerprint(&r.build(&g, d), args.wl.iterations, &mut dict, args.wl.options());
    let mut v = f.to_json();
    v["representation"] = r.name().into();
    v["format_version"] = FORMAT_VERSION.into();
    emit(args.out.as_deref(), &format!("{v:#}\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn resolve_seed(seed: Option<u64>) -> RngSeed {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn generate(args: GenerateArgs, seed: Option<u64>) -> CmdResult {
    let seed = resolve_seed(seed);
    let walk = WalkParams {
        num_walks: args.num_walks,
        walk_len: args.walk_len,
        ..WalkParams::default()
    };
    let ds = match args.dataset {
        DatasetChoice::A => make_dataset_a(args.alpha, args.graphs_per_class, walk, seed),
        DatasetChoice::B => make_dataset_b(args.sigma0, args.sigma1, args.graphs_per_class, walk, seed),
    }
    .map_err(|e| e.to_string())?;
    fs::create_dir_all(&args.out).map_err(|e| format!("{}: {e}", args.out.display()))?;
    let mut files = Vec::with_capacity(ds.graphs.len());
    for (i, g) in ds.graphs.iter().enumerate() {
        let name = format!("graph_{i:04}.csv");
        let path = args.out.join(&name);
        fs::write(&path, write_csv(g)).map_err(|e| format!("{}: {e}", path.display()))?;
        files.push(name);
    }
    let mut manifest = serde_json::to_value(&ds.manifest).map_err(|e| e.to_string())?;
    manifest["files"] = files.into();
    manifest["format_version"] = FORMAT_VERSION.into();
    let path = args.out.join("manifest.json");
    fs::write(&path, format!("{manifest:#}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    println!("wrote {} graphs to {}", ds.graphs.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn experiment(args: ExperimentArgs, seed: Option<u64>) -> CmdResult {
    let text = fs::read_to_string(&args.config).map_err(|e| format!("{}: {e}", args.config.display()))?;
    let mut cfg = ExperimentConfig::from_json(&text).map_err(|e| e.to_string())?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| e.to_string())?;
    let report = pool.install(|| run_experiment_grid(&cfg)).map_err(|e| e.to_string())?;
    report.write_to(&args.out).map_err(|e| e.to_string())?;
    for c in report.cells.iter().filter_map(|c| c.error.as_ref()) {
        eprintln!("cell failed: {c}");
    }
    print!("{}", report.to_csv());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform(a) => transform(a),
        Command::Paths(a) => paths(a),
        Command::Reach(a) => reach(a),
        Command::Iso(a) => iso(a),
        Command::WlCompare(a) => wl_compare(a),
        Command::Generate(a) => generate(a, cli.seed),
        Command::Experiment(a) => experiment(a, cli.seed),
        Command::Export(a) => export(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn version_mentions_library() {
        assert!(LONG_VERSION.contains(&format!("causal-topology {VERSION}")));
        assert!(LONG_VERSION.contains(&format!("format {FORMAT_VERSION}")));
    }
}
