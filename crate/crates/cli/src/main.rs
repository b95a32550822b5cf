mod bench;
mod io;
mod svg;

use anyhow::{anyhow, bail, Context, Result};
use bench::{BenchConfig, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use geosep::contraction::{build_kappa_partition, KappaPartition};
use geosep::cubewiring::{verify_wiring, wire_matching_with, WireOptions, Wiring, WiringInstance, WiringStats};
use geosep::geometry::{build_intersection_graph, build_intersection_graph_naive};
use geosep::oracle::{brute_force, gen_instance, GeneratorConfig, ShapeMix};
use geosep::problem::{verify_witness, Problem};
use geosep::separator::{build_separator, separator_for_contraction, CliqueSeparator, H0Search, SeparatorOptions};
use geosep::solvers::{solve, DecompositionMethod, SolveOptions};
use geosep::treedecomp::{decompose_by_blowup, decompose_by_separator, validate_decomposition};
use geosep::{Graph, WeightFunction};
use io::{input_from_value, kind_of, load_input, load_instance, parse_list, read_json, write_json, write_text};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "geosep", version, about = "Separators, tree decompositions, exact solvers and grid wiring for intersection graphs of fat objects")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance of similarly sized fat objects.
    Gen(GenArgs),
    /// Build the intersection graph of an instance.
    Graph(GraphArgs),
    /// Balanced clique-weighted separator of an instance.
    Separate(SeparateArgs),
    /// κ-partition of a graph or instance.
    Partition(PartitionArgs),
    /// Weighted tree decomposition of a partition.
    Decompose(DecomposeArgs),
    /// Solve a problem exactly by dynamic programming.
    Solve(SolveArgs),
    /// Solve a problem by exhaustive enumeration (small inputs only).
    Oracle(OracleArgs),
    /// Route a matching through a grid box, or check a wiring.
    Wire(WireArgs),
    /// Seeded benchmark sweep written as CSV and JSON.
    Bench(BenchArgs),
    /// Re-read and re-validate a JSON artifact.
    Verify(VerifyArgs),
    #[command(hide = true, name = "reduce-selftest")]
    ReduceSelftest {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Shapes::Balls)]
    shapes: Shapes,
    /// Radii and sides are drawn from [1, sigma].
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Side of the region holding the centers (default scales with n).
    #[arg(long)]
    region: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render the instance (d = 2 only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shapes {
    Balls,
    Boxes,
    Mixed,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Test every pair instead of bucketing.
    #[arg(long)]
    naive: bool,
}

#[derive(Args, Clone)]
struct SepFlags {
    /// Clique weight: log, unit or pow:<p>.
    #[arg(long, default_value = "log")]
    gamma: WeightFunction,
    /// Base hypercube search.
    #[arg(long, value_enum, default_value_t = H0Mode::Bisect)]
    h0: H0Mode,
}

#[derive(Clone, Copy, ValueEnum)]
enum H0Mode {
    Bisect,
    Enumerate,
}

impl From<H0Mode> for H0Search {
    fn from(m: H0Mode) -> H0Search {
        match m {
            H0Mode::Bisect => H0Search::Bisect,
            H0Mode::Enumerate => H0Search::Enumerate,
        }
    }
}

#[derive(Args)]
struct SeparateArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    sep: SepFlags,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render sides and separator cliques (d = 2 only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "log")]
    gamma: WeightFunction,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Blowup,
    Separator,
}

impl From<Method> for DecompositionMethod {
    fn from(m: Method) -> DecompositionMethod {
        match m {
            Method::Blowup => DecompositionMethod::Blowup,
            Method::Separator => DecompositionMethod::Separator,
        }
    }
}

#[derive(Args)]
struct DecomposeArgs {
    /// Partition written by `partition`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Blowup)]
    method: Method,
    /// Separator recursion stops at weight c·n^{1-1/d}.
    #[arg(long, default_value_t = 4.0)]
    c: f64,
    #[arg(long, value_enum, default_value_t = H0Mode::Bisect)]
    h0: H0Mode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProblemFlags {
    #[arg(long, value_parser = ["is", "vc", "ds", "rds", "steiner", "mif", "fvs", "cvc"])]
    problem: String,
    /// Domination radius for rds.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Comma-separated terminal ids for steiner.
    #[arg(long)]
    terminals: Option<String>,
    /// Decision bound: at most this size (minimization) or at least (maximization).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ProblemFlags {
    fn problem(&self) -> Result<Problem> {
        let p = if self.problem == "steiner" {
            let t = self.terminals.as_deref().ok_or_else(|| invalid("steiner needs --terminals"))?;
            Problem::SteinerTree { terminals: parse_list(t).map_err(invalid)? }
        } else {
            bench::problem_by_name(&self.problem, self.r).map_err(invalid)?
        };
        Ok(p)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    p: ProblemFlags,
    #[arg(long, default_value = "log")]
    gamma: WeightFunction,
    #[arg(long, value_enum, default_value_t = Method::Blowup)]
    method: Method,
    #[arg(long, default_value_t = 4.0)]
    c: f64,
    #[arg(long, value_enum, default_value_t = H0Mode::Bisect)]
    h0: H0Mode,
    /// Keep partial solutions above the per-class caps.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    p: ProblemFlags,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct WireArgs {
    #[command(subcommand)]
    action: Option<WireAction>,
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Box sides n_1,...,n_{d-1}.
    #[arg(long)]
    n: Option<String>,
    /// Matching file; a random permutation of the box is used otherwise.
    #[arg(long)]
    matching: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verify every intermediate sub-box fragment.
    #[arg(long)]
    check_subgrids: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render one layer of a d = 3 wiring.
    #[arg(long)]
    svg_layer: Option<i64>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WireAction {
    /// Check a wiring file.
    Verify {
        wiring: PathBuf,
        /// Also check the endpoints against this matching.
        #[arg(long)]
        matching: Option<PathBuf>,
        #[arg(long)]
        svg_layer: Option<i64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// JSON suite configuration; overrides the other flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Suite::Separator)]
    suite: Suite,
    #[arg(long, default_value = "2")]
    d: String,
    #[arg(long, default_value = "100,200,400")]
    n: String,
    /// Wiring box sides, e.g. 2x2,4x4.
    #[arg(long, default_value = "2x2,4x4")]
    sides: String,
    #[arg(long, default_value = "is")]
    problems: String,
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "log")]
    gamma: WeightFunction,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Output prefix; writes <prefix>.csv and <prefix>.json.
    #[arg(long, default_value = "bench")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Instance or graph the artifact refers to (separators, solve results).
    #[arg(long)]
    input: Option<PathBuf>,
}

/// Exit-code carrying failures.
#[derive(Debug)]
enum Outcome {
    Infeasible(String),
    VerificationFailed(String),
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            Outcome::Infeasible(m) => write!(f, "infeasible: {m}"),
            Outcome::VerificationFailed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for Outcome {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(geosep::Error::InvalidInput(msg.into()))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(o) = e.downcast_ref::<Outcome>() {
        return match o {
            Outcome::Infeasible(_) => 3,
            Outcome::VerificationFailed(_) => 4,
        };
    }
    match e.downcast_ref::<geosep::Error>() {
        Some(geosep::Error::VerificationFailed(_)) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen(a) => cmd_gen(a),
        Command::Graph(a) => cmd_graph(a),
        Command::Separate(a) => cmd_separate(a),
        Command::Partition(a) => cmd_partition(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Wire(a) => cmd_wire(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ReduceSelftest { count, seed } => {
            let k = geosep::rankbased::reduce_selftest(count, seed).map_err(Outcome::VerificationFailed)?;
            println!("reduce: {k} random sets passed");
            Ok(())
        }
    }
}

fn require_planar(d: usize) -> Result<()> {
    if d != 2 {
        bail!(invalid(format!("SVG output needs d = 2, got d = {d}")));
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let shapes = match a.shapes {
        Shapes::Balls => ShapeMix::Balls,
        Shapes::Boxes => ShapeMix::Boxes,
        Shapes::Mixed => ShapeMix::Mixed,
    };
    let cfg = GeneratorConfig { d: a.d, n: a.n, shapes, sigma: a.sigma, region: a.region, seed: a.seed };
    let f = gen_instance(&cfg)?;
    if let Some(p) = &a.svg {
        require_planar(f.dimension)?;
        write_text(p, &svg::instance(&f, |_| "#1f77b4".into(), &[]))?;
    }
    write_json(a.out.as_deref(), &f.to_json_value())
}

fn cmd_graph(a: GraphArgs) -> Result<()> {
    let f = load_instance(&a.input)?;
    let g = if a.naive { build_intersection_graph_naive(&f) } else { build_intersection_graph(&f)? };
    write_json(a.out.as_deref(), &g.graph.to_json_value())
}

fn cmd_separate(a: SeparateArgs) -> Result<()> {
    let f = load_instance(&a.input)?;
    let opts = SeparatorOptions { gamma: a.sep.gamma, h0: a.sep.h0.into() };
    let sep = build_separator(&f, &opts)?;
    if let Some(p) = &a.svg {
        require_planar(f.dimension)?;
        write_text(p, &svg::separator(&f, &sep))?;
    }
    let mut v = sep.to_json_value();
    v["gamma"] = a.sep.gamma.to_string().into();
    write_json(a.out.as_deref(), &v)
}

fn cmd_partition(a: PartitionArgs) -> Result<()> {
    let input = load_input(&a.input)?;
    let p = build_kappa_partition(&input.graph, a.gamma);
    let mut v = p.to_json_value();
    v["graph"] = input.graph.to_json_value();
    if let Some(f) = &input.geometry {
        v["instance"] = f.to_json_value();
    }
    write_json(a.out.as_deref(), &v)
}

/// Graph, partition and optional geometry embedded in a partition file.
fn load_partition(v: &Value) -> Result<(Graph, KappaPartition, Option<geosep::ObjectSet>)> {
    if kind_of(v) != Some("partition") {
        bail!(invalid("expected a partition file"));
    }
    let gv = v.get("graph").cloned().ok_or_else(|| invalid("partition file has no graph"))?;
    let g = Graph::from_json_value(gv)?;
    let p = KappaPartition::from_json_value(v, &g)?;
    let f = match v.get("instance") {
        Some(iv) => Some(geosep::ObjectSet::from_json_value(iv.clone())?),
        None => None,
    };
    Ok((g, p, f))
}

fn cmd_decompose(a: DecomposeArgs) -> Result<()> {
    let (g, p, f) = load_partition(&read_json(&a.input)?)?;
    let w = match a.method {
        Method::Blowup => decompose_by_blowup(&p.contracted),
        Method::Separator => {
            let f = f.ok_or_else(|| invalid("separator decomposition needs a partition built from an instance"))?;
            let sopts = SeparatorOptions { gamma: p.gamma, h0: a.h0.into() };
            let base = a.c * (g.n().max(1) as f64).powf(1.0 - 1.0 / f.dimension as f64);
            decompose_by_separator(&p.contracted, base, |set| Ok(separator_for_contraction(&p, &f, set, &sopts)?.vertices()))?
        }
    };
    let report = w.validate(&p.contracted.graph, &p.contracted.weights);
    if !report.is_valid() {
        bail!(Outcome::VerificationFailed(report.violations.join("; ")));
    }
    let mut v = w.to_json_value();
    v["method"] = json!(DecompositionMethod::from(a.method));
    v["width"] = report.width.into();
    v["contracted"] = json!({
        "n": p.len(),
        "edges": p.contracted.graph.edges().iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
        "weights": p.contracted.weights,
    });
    write_json(a.out.as_deref(), &v)
}

fn within_budget(p: &Problem, value: usize, budget: Option<usize>) -> bool {
    match budget {
        None => true,
        Some(b) if p.maximizes() => value >= b,
        Some(b) => value <= b,
    }
}

/// Writes the result, then maps infeasibility or a missed budget to exit 3.
fn finish(flags: &ProblemFlags, p: &Problem, optimum: Option<usize>, mut v: Value) -> Result<()> {
    let ok = optimum.is_some_and(|x| within_budget(p, x, flags.budget));
    if let Some(b) = flags.budget {
        v["budget"] = b.into();
        v["within_budget"] = ok.into();
    }
    write_json(flags.out.as_deref(), &v)?;
    match optimum {
        None => bail!(Outcome::Infeasible(format!("{p} has no feasible solution"))),
        Some(x) if !ok => bail!(Outcome::Infeasible(format!("optimum {x} misses the budget"))),
        Some(_) => Ok(()),
    }
}

fn cmd_solve(a: SolveArgs) -> Result<()> {
    let p = a.p.problem()?;
    let input = load_input(&a.p.input)?;
    let opts = SolveOptions {
        gamma: a.gamma,
        method: a.method.into(),
        base_c: a.c,
        prune: !a.no_prune,
        h0: a.h0.into(),
    };
    let res = solve(&input.graph, input.geometry.as_ref(), &p, &opts)?;
    finish(&a.p, &p, res.optimum, res.to_json_value())
}

fn cmd_oracle(a: OracleArgs) -> Result<()> {
    let p = a.p.problem()?;
    let input = load_input(&a.p.input)?;
    p.check(input.graph.n()).map_err(invalid)?;
    let start = Instant::now();
    let best = brute_force(&input.graph, &p)?;
    let mut v = serde_json::to_value(&p)?;
    v["kind"] = "oracle_result".into();
    v["optimum"] = json!(best.as_ref().map(|b| b.0));
    v["witness"] = json!(best.as_ref().map(|b| b.1.clone()).unwrap_or_default());
    v["wall_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    finish(&a.p, &p, best.map(|b| b.0), v)
}

fn load_matching(path: &Path, d: Option<usize>, n: Option<&[i64]>) -> Result<WiringInstance> {
    let mut v = read_json(path)?;
    if let Some(d) = d {
        if v.get("d").is_none() {
            v["d"] = d.into();
        }
    }
    if let Some(n) = n {
        if v.get("n").is_none() {
            v["n"] = json!(n);
        }
    }
    let inst: WiringInstance = serde_json::from_value(v).map_err(|e| invalid(format!("bad matching: {e}")))?;
    inst.validate()?;
    Ok(inst)
}

/// Box sides of the matching a `wire` output was built for.
fn matching_sides(w: &Wiring) -> Option<Vec<i64>> {
    w.sides.iter().all(|s| s % 36 == 0).then(|| w.sides.iter().map(|s| s / 36).collect())
}

fn layer_svg(w: &Wiring, layer: Option<i64>, path: Option<&Path>) -> Result<()> {
    match (layer, path) {
        (Some(h), Some(p)) => {
            if w.d != 3 {
                bail!(invalid(format!("layer rendering needs d = 3, got d = {}", w.d)));
            }
            if h < 1 || h > w.height {
                bail!(invalid(format!("layer {h} outside 1..={}", w.height)));
            }
            write_text(p, &svg::wiring_layer(w, h))
        }
        (None, None) => Ok(()),
        _ => bail!(invalid("--svg-layer and --svg go together")),
    }
}

fn cmd_wire(a: WireArgs) -> Result<()> {
    if let Some(WireAction::Verify { wiring, matching, svg_layer, svg }) = a.action {
        let w = Wiring::from_json_value(&read_json(&wiring)?)?;
        let n = matching_sides(&w);
        let inst = matching.map(|m| load_matching(&m, Some(w.d), n.as_deref())).transpose()?;
        let errs = verify_wiring(&w, inst.as_ref());
        layer_svg(&w, svg_layer, svg.as_deref())?;
        if !errs.is_empty() {
            bail!(Outcome::VerificationFailed(errs.join("; ")));
        }
        println!("ok: {} wires, height {}, longest {}", w.wires.len(), w.height, w.max_length());
        return Ok(());
    }
    let n: Option<Vec<i64>> = a.n.as_deref().map(parse_list).transpose().map_err(invalid)?;
    let inst = match (&a.matching, &n) {
        (Some(m), _) => load_matching(m, Some(a.d), n.as_deref())?,
        (None, Some(n)) => {
            if n.len() + 1 != a.d || n.iter().any(|&x| x < 1) {
                bail!(invalid(format!("--n needs {} positive sides", a.d.saturating_sub(1))));
            }
            WiringInstance::random_permutation(a.d, n, a.seed)
        }
        (None, None) => bail!(invalid("give --n or --matching")),
    };
    let w = wire_matching_with(&inst, &WireOptions { check_subgrids: a.check_subgrids })?;
    let errs = verify_wiring(&w, Some(&inst));
    if !errs.is_empty() {
        bail!(Outcome::VerificationFailed(errs.join("; ")));
    }
    layer_svg(&w, a.svg_layer, a.svg.as_deref())?;
    let mut v = w.to_json_value();
    v["stats"] = json!(WiringStats::measure(&w, &inst.n));
    write_json(a.out.as_deref(), &v)
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    let cfg = match &a.config {
        Some(p) => serde_json::from_value(read_json(p)?).map_err(|e| invalid(format!("bad bench config: {e}")))?,
        None => BenchConfig {
            suite: a.suite,
            d: parse_list(&a.d).map_err(invalid)?,
            n: parse_list(&a.n).map_err(invalid)?,
            sides: a
                .sides
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.split('x').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()
                .map_err(|e| invalid(format!("bad --sides: {e}")))?,
            problems: a.problems.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            seeds: a.seeds,
            seed: a.seed,
            gamma: a.gamma,
            sigma: a.sigma,
        },
    };
    let records = bench::run(&cfg);
    let csv_path = a.out.with_extension("csv");
    let json_path = a.out.with_extension("json");
    bench::write_csv(&csv_path, &records)?;
    write_json(Some(&json_path), &bench::to_json(&cfg, &records))?;
    for s in bench::summarize(&records) {
        eprintln!("{s}");
    }
    eprintln!("{} runs written to {} and {}", records.len(), csv_path.display(), json_path.display());
    Ok(())
}

fn need_input(a: &VerifyArgs, what: &str) -> Result<io::Input> {
    let p = a.input.as_ref().ok_or_else(|| invalid(format!("verifying a {what} needs --input")))?;
    load_input(p)
}

fn check(errs: Vec<String>) -> Result<()> {
    if errs.is_empty() {
        Ok(())
    } else {
        bail!(Outcome::VerificationFailed(errs.join("; ")))
    }
}

fn verify_solution(v: &Value, g: &Graph) -> Result<()> {
    let p: Problem = serde_json::from_value(v.clone()).map_err(|e| invalid(format!("bad problem: {e}")))?;
    let optimum: Option<usize> = serde_json::from_value(v["optimum"].clone()).map_err(|e| invalid(e.to_string()))?;
    let witness: Vec<usize> = serde_json::from_value(v["witness"].clone()).map_err(|e| invalid(e.to_string()))?;
    match optimum {
        None => check(if witness.is_empty() { vec![] } else { vec!["infeasible result carries a witness".into()] }),
        Some(x) => {
            let mut errs = Vec::new();
            if witness.len() != x {
                errs.push(format!("witness has {} vertices, optimum says {x}", witness.len()));
            }
            if !verify_witness(g, &p, &witness) {
                errs.push(format!("witness is not feasible for {p}"));
            }
            check(errs)
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<()> {
    let v = read_json(&a.file)?;
    let kind = kind_of(&v).ok_or_else(|| invalid("artifact has no kind field"))?.to_string();
    match kind.as_str() {
        "instance" | "graph" => {
            input_from_value(v)?;
        }
        "separator" => {
            let sep = CliqueSeparator::from_json_value(&v)?;
            let input = need_input(&a, "separator")?;
            let f = input.geometry.as_ref().ok_or_else(|| invalid("separator input must be an instance"))?;
            check(sep.validate(&input.graph, f.dimension))?;
        }
        "partition" => {
            let (g, p, _) = load_partition(&v)?;
            check(p.validate(&g))?;
        }
        "weighted_tree_decomposition" => {
            let bags: Vec<Vec<usize>> = serde_json::from_value(v["bags"].clone()).context("bags")?;
            let edges: Vec<(usize, usize)> = serde_json::from_value(v["edges"].clone()).context("edges")?;
            let c = &v["contracted"];
            let weights: Vec<f64> = serde_json::from_value(c["weights"].clone()).context("weights")?;
            let g = Graph::from_json_value(json!({"n": c["n"], "edges": c["edges"]}))?;
            check(validate_decomposition(&bags, &edges, &g, &weights).violations)?;
        }
        "solve_result" | "oracle_result" => {
            let input = need_input(&a, "solution")?;
            verify_solution(&v, &input.graph)?;
        }
        "wiring" => {
            let w = Wiring::from_json_value(&v)?;
            let inst = match &a.input {
                Some(m) => Some(load_matching(m, Some(w.d), matching_sides(&w).as_deref())?),
                None => None,
            };
            check(verify_wiring(&w, inst.as_ref()))?;
        }
        "wiring_instance" => {
            let inst: WiringInstance = serde_json::from_value(v).map_err(|e| invalid(e.to_string()))?;
            inst.validate()?;
        }
        "bench" => {
            let _: Vec<bench::RunRecord> = serde_json::from_value(v["records"].clone()).context("records")?;
            let _: BenchConfig = serde_json::from_value(v["config"].clone()).context("config")?;
        }
        other => bail!(invalid(format!("unknown artifact kind {other:?}"))),
    }
    println!("ok: {kind}");
    Ok(())
}
