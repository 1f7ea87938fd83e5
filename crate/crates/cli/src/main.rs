mod input;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use stanley_lab_core::bounds::{
    analytic_spread_edge, check_lower_bound, claims_for, conjecture_check_s_mod, has_power_bonus, lower_bound,
    question_experiment, stanley_verdict, BoundReport, ModuleKind, Verdict,
};
use stanley_lab_core::constructions::{decompose_layer, decompose_power_general, decompose_s_mod_power};
use stanley_lab_core::depth::{depth_by_trung, depth_exact, rank_table};
use stanley_lab_core::sdepth::{sdepth_exact, search_partition, CharacteristicPoset, SearchOutcome, DEFAULT_BUDGET};
use stanley_lab_core::{Error, Graph, ModulePresentation, StanleyDecomposition};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Input(String),
    /// A verification or claim failed; the message carries the witness.
    Claim(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Claim(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            Error::Contradiction { .. } | Error::InvalidCertificate(_) => CliError::Claim(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "stanley-lab", version, about = "Stanley depth and depth of powers of edge ideals")]
struct Cli {
    /// Node budget for each partition search.
    #[arg(long, global = true, env = "STANLEY_LAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// `--module file.json`, or the edge-ideal module `--kind` of `--graph` at `--k`.
#[derive(Args)]
struct ModuleSource {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    module: Option<PathBuf>,
    /// Preset (path:4, cycle:3+path:2, ...) or graph JSON file.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// s-mod-power, power or layer.
    #[arg(long, default_value_t = ModuleKind::SModPower)]
    kind: ModuleKind,
}

impl ModuleSource {
    fn graph(&self) -> Result<Option<Graph>, CliError> {
        self.graph.as_deref().map(input::graph).transpose()
    }

    fn load(&self) -> Result<ModulePresentation, CliError> {
        match (&self.module, self.graph()?) {
            (Some(path), _) => input::module(path),
            (None, Some(g)) => Ok(self.kind.module(&g, self.k)?),
            (None, None) => Err(CliError::Input("give --module or --graph".into())),
        }
    }
}

#[derive(Args)]
struct Instance {
    /// Preset (path:4, cycle:3+path:2, ...) or graph JSON file.
    #[arg(long)]
    graph: String,
    #[arg(long)]
    k: u32,
    /// s-mod-power, power or layer.
    #[arg(long, default_value_t = ModuleKind::Power)]
    kind: ModuleKind,
}

#[derive(Subcommand)]
enum Command {
    /// Components, bipartiteness, p, analytic spread and the bounds for a graph.
    Analyze { graph: String },
    /// Build an explicit Stanley decomposition and write it as a certificate.
    Construct {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate with the box verifier.
    Verify { certificate: PathBuf },
    /// Exact Stanley depth by interval-partition search.
    Sdepth {
        #[command(flatten)]
        source: ModuleSource,
        /// Only decide whether sdepth >= TARGET.
        #[arg(long)]
        target: Option<usize>,
        /// Write the best decomposition found.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Exact depth from Koszul homology.
    Depth {
        #[command(flatten)]
        source: ModuleSource,
        /// Compare with the closed form for S/I^k at k >= n - 1 (needs --graph).
        #[arg(long, requires = "graph")]
        trung: bool,
        /// Print the nonzero Koszul ranks per multidegree.
        #[arg(long)]
        ranks: bool,
    },
    /// Check the lower bound and Stanley's inequality for one instance.
    Certify {
        #[command(flatten)]
        instance: Instance,
    },
    /// Check every claim on all labelled graphs up to a size.
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_k: u32,
        /// Write all reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is sdepth(I(G)^k) >= 2 for connected bipartite G? Reports evidence only.
    Question {
        /// Repeatable; defaults to cycle:4 cycle:6 path:4 path:5 star:3 star:4.
        #[arg(long)]
        graph: Vec<String>,
        /// Repeatable; defaults to 1 and 2.
        #[arg(long)]
        k: Vec<u32>,
    },
}

struct Ctx {
    budget: u64,
    format: Format,
    invocation: Vec<String>,
}

impl Ctx {
    fn envelope(&self, command: &str, result: impl Serialize) -> serde_json::Value {
        json!({
            "tool": "stanley-lab",
            "version": VERSION,
            "invocation": self.invocation,
            "command": command,
            "result": result,
        })
    }

    /// Print `table` or the JSON envelope around `result`.
    fn emit(&self, command: &str, table: &str, result: impl Serialize) {
        match self.format {
            Format::Table => print!("{table}"),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.envelope(command, result)).unwrap()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx { budget: cli.budget, format: cli.format, invocation: std::env::args().collect() };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Input(m) | CliError::Claim(m) | CliError::Budget(m)) = &e;
            eprintln!("error: {m}");
            ExitCode::from(e.code())
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze { graph } => analyze(ctx, &input::graph(&graph)?),
        Command::Construct { instance, out } => construct(ctx, &instance, out),
        Command::Verify { certificate } => verify(ctx, &input::certificate(&certificate)?),
        Command::Sdepth { source, target, certificate } => sdepth(ctx, &source.load()?, target, certificate),
        Command::Depth { source, trung, ranks } => depth(ctx, &source, trung, ranks),
        Command::Certify { instance } => certify(ctx, &instance),
        Command::Sweep { max_n, max_k, out } => sweep(ctx, max_n, max_k, out),
        Command::Question { graph, k } => question(ctx, graph, k),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(ctx: &Ctx, g: &Graph) -> Result<(), CliError> {
    let comps = g.components();
    let p = g.bipartite_component_count();
    let power_bound = if g.has_edges() { Some(lower_bound(ModuleKind::Power, g, 1)?) } else { None };
    let result = json!({
        "graph": g,
        "n": g.n(),
        "edges": g.edges().len(),
        "components": comps.len(),
        "bipartite": g.is_bipartite(),
        "tree": g.is_tree_graph(),
        "p": p,
        "analytic_spread": analytic_spread_edge(g),
        "sdepth_lower_bounds": {
            "layer": p,
            "s-mod-power": p,
            "power": power_bound,
        },
        "power_bonus": g.has_edges() && has_power_bonus(g),
    });
    let mut t = String::new();
    writeln!(t, "graph        {g}").unwrap();
    writeln!(t, "n            {}", g.n()).unwrap();
    writeln!(t, "edges        {}", g.edges().len()).unwrap();
    writeln!(t, "components   {}", comps.len()).unwrap();
    writeln!(t, "bipartite    {}", yes_no(g.is_bipartite())).unwrap();
    writeln!(t, "tree         {}", yes_no(g.is_tree_graph())).unwrap();
    writeln!(t, "p            {p}").unwrap();
    writeln!(t, "ℓ(I)         {}", analytic_spread_edge(g)).unwrap();
    writeln!(t, "sdepth(I^k/I^(k+1)) >= {p}, sdepth(S/I^k) >= {p}").unwrap();
    match power_bound {
        Some(b) => writeln!(t, "sdepth(I^k)  >= {b}").unwrap(),
        None => writeln!(t, "sdepth(I^k)  undefined (I = 0)").unwrap(),
    }
    ctx.emit("analyze", &t, result);
    Ok(())
}

fn build(kind: ModuleKind, g: &Graph, k: u32, budget: u64) -> Result<StanleyDecomposition, CliError> {
    Ok(match kind {
        ModuleKind::Layer => decompose_layer(g, k, budget)?,
        ModuleKind::SModPower => decompose_s_mod_power(g, k, budget)?,
        ModuleKind::Power => decompose_power_general(g, k, budget)?,
    })
}

fn construct(ctx: &Ctx, inst: &Instance, out: Option<PathBuf>) -> Result<(), CliError> {
    let g = input::graph(&inst.graph)?;
    let d = build(inst.kind, &g, inst.k, ctx.budget)?;
    let report = d.verify()?;
    if !report.valid {
        return Err(CliError::Claim(format!("constructed decomposition failed verification: {report:?}")));
    }
    let sdepth = report.sdepth;
    let cert = json!({
        "tool": "stanley-lab",
        "version": VERSION,
        "invocation": ctx.invocation,
        "graph": g,
        "k": inst.k,
        "kind": inst.kind,
        "sdepth": sdepth,
        "decomposition": d,
    });
    let text = serde_json::to_string_pretty(&cert).unwrap();
    match &out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None if ctx.format == Format::Json => println!("{text}"),
        None => {}
    }
    if ctx.format == Format::Table || out.is_some() {
        let sd = sdepth.map_or("-".into(), |s| s.to_string());
        let mut t = format!("{} of {g} at k={}: {} spaces, sdepth {sd}\n", inst.kind, inst.k, d.spaces.len());
        if let Some(path) = &out {
            writeln!(t, "certificate written to {}", path.display()).unwrap();
        } else {
            for s in &d.spaces {
                writeln!(t, "  {s}").unwrap();
            }
        }
        eprint!("{t}");
    }
    Ok(())
}

fn verify(ctx: &Ctx, d: &StanleyDecomposition) -> Result<(), CliError> {
    let report = d.verify()?;
    let table = if report.valid {
        format!("valid: {} spaces, sdepth {}\n", d.spaces.len(), report.sdepth.map_or("-".into(), |s| s.to_string()))
    } else {
        String::new()
    };
    if report.valid {
        ctx.emit("verify", &table, &report);
        return Ok(());
    }
    if ctx.format == Format::Json {
        ctx.emit("verify", "", &report);
    }
    let witness = report.witness.as_ref().map_or("-".into(), |w| w.to_string());
    let violation = report.violation.map_or("-".into(), |v| v.to_string());
    Err(CliError::Claim(format!("invalid decomposition: monomial {witness} is {violation}")))
}

fn sdepth(ctx: &Ctx, m: &ModulePresentation, target: Option<usize>, cert: Option<PathBuf>) -> Result<(), CliError> {
    let poset = CharacteristicPoset::new(m)?;
    let write_cert = |d: &StanleyDecomposition| -> Result<(), CliError> {
        if let Some(path) = &cert {
            let cert = json!({
                "tool": "stanley-lab",
                "version": VERSION,
                "invocation": ctx.invocation,
                "sdepth": d.sdepth(),
                "decomposition": d,
            });
            fs::write(path, serde_json::to_string_pretty(&cert).unwrap() + "\n")
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    };

    if let Some(d) = target {
        let report = search_partition(&poset, d, ctx.budget);
        let (verdict, partition) = match report.outcome {
            SearchOutcome::Found(p) => ("found", Some(p)),
            SearchOutcome::Infeasible => ("infeasible", None),
            SearchOutcome::BudgetExceeded => ("budget-exceeded", None),
        };
        let table = format!("sdepth >= {d}: {verdict} ({} nodes)\n", report.nodes);
        ctx.emit(
            "sdepth",
            &table,
            json!({ "module": m, "target": d, "outcome": verdict, "nodes": report.nodes, "partition": partition }),
        );
        return match (verdict, partition) {
            (_, Some(p)) => write_cert(&poset.partition_to_decomposition(&p)?),
            ("infeasible", _) => Err(CliError::Claim(format!("{m} has no interval partition of value {d}"))),
            _ => Err(CliError::Budget(format!("budget of {} nodes exhausted at target {d}", ctx.budget))),
        };
    }

    let r = sdepth_exact(m, ctx.budget)?;
    let table = format!("sdepth {} ({}, {} nodes)\n", r.value, r.flag(), r.nodes);
    ctx.emit(
        "sdepth",
        &table,
        json!({ "module": m, "value": r.value, "exact": r.exact, "nodes": r.nodes, "partition": r.partition }),
    );
    write_cert(&poset.partition_to_decomposition(&r.partition)?)?;
    if r.exact {
        Ok(())
    } else {
        Err(CliError::Budget(format!("budget of {} nodes exhausted; {} is a lower bound", ctx.budget, r.value)))
    }
}

fn depth(ctx: &Ctx, source: &ModuleSource, trung: bool, ranks: bool) -> Result<(), CliError> {
    let m = source.load()?;
    let d = depth_exact(&m)?;
    let mut t = format!("depth {d}\n");
    let mut result = json!({ "module": m, "depth": d });
    let mut mismatch = None;
    if trung {
        let g = source.graph()?.expect("clap enforces --graph with --trung");
        if source.kind != ModuleKind::SModPower {
            return Err(CliError::Input("--trung applies to --kind s-mod-power".into()));
        }
        let closed = depth_by_trung(&g, source.k);
        match closed {
            Some(p) => {
                writeln!(t, "closed form p = {p}: {}", if p == d { "agrees" } else { "DISAGREES" }).unwrap();
                if p != d {
                    mismatch = Some(format!("depth {d} but closed form gives {p} for {g} at k={}", source.k));
                }
            }
            None => writeln!(t, "closed form: no claim for k < n - 1").unwrap(),
        }
        result["trung"] = json!(closed);
    }
    if ranks {
        let table = rank_table(&m)?;
        for (a, r) in &table {
            writeln!(t, "  {a}  {r:?}").unwrap();
        }
        result["ranks"] = json!(table.iter().map(|(a, r)| json!({ "degree": a, "ranks": r })).collect::<Vec<_>>());
    }
    ctx.emit("depth", &t, result);
    mismatch.map_or(Ok(()), |m| Err(CliError::Claim(m)))
}

fn report_line(r: &BoundReport) -> String {
    let mut parts = vec![format!("{:<32} {:<13}", r.claim, r.verdict.to_string())];
    if let Some(b) = r.bound {
        parts.push(format!("bound {b}"));
    }
    if let Some(d) = r.depth {
        parts.push(format!("depth {d} ({})", r.depth_source.as_deref().unwrap_or("-")));
    }
    if let Some(s) = &r.sdepth {
        parts.push(format!("sdepth {} ({})", s.value, if s.exact { "exact" } else { "lower-bound only" }));
    }
    parts.join("  ")
}

/// Exit status for a set of reports: refuted theorem-backed claims first,
/// then budget-limited ones.
fn status(reports: &[BoundReport]) -> Result<(), CliError> {
    if let Some(r) = reports.iter().find(|r| r.verdict == Verdict::Fails) {
        let w = r.witness.as_ref().map_or(String::new(), |w| format!(" on {}: {}", w.module, w.transcript));
        return Err(CliError::Claim(format!("{} fails for {} k={}{w}", r.claim, r.instance.graph, r.instance.k)));
    }
    if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        return Err(CliError::Budget("some checks are inconclusive within the budget".into()));
    }
    Ok(())
}

fn certify(ctx: &Ctx, inst: &Instance) -> Result<(), CliError> {
    let g = input::graph(&inst.graph)?;
    let mut reports = vec![check_lower_bound(inst.kind, &g, inst.k, ctx.budget)?];
    reports.push(stanley_verdict(inst.kind, &g, inst.k, ctx.budget)?);
    if inst.kind == ModuleKind::SModPower {
        reports.push(conjecture_check_s_mod(&g, inst.k, Some(ctx.budget))?);
    }
    let mut t = format!("{} of {g} at k={}\n", inst.kind, inst.k);
    for r in &reports {
        writeln!(t, "  {}", report_line(r)).unwrap();
    }
    ctx.emit("certify", &t, &reports);
    status(&reports)
}

fn sweep(ctx: &Ctx, max_n: usize, max_k: u32, out: Option<PathBuf>) -> Result<(), CliError> {
    if max_n > 5 {
        return Err(CliError::Input("sweeps enumerate all labelled graphs; --max-n is capped at 5".into()));
    }
    let instances: Vec<(Graph, u32)> =
        (1..=max_n).flat_map(Graph::all_labeled).flat_map(|g| (0..=max_k).map(move |k| (g.clone(), k))).collect();
    let results: Vec<Vec<BoundReport>> =
        instances.par_iter().map(|(g, k)| claims_for(g, *k, ctx.budget)).collect::<Result<_, _>>()?;
    let reports: Vec<BoundReport> = results.into_iter().flatten().collect();

    let mut tally: BTreeMap<(&str, String), [usize; 3]> = BTreeMap::new();
    for r in &reports {
        let slot = match r.verdict {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            _ => 2,
        };
        tally.entry((r.claim.as_str(), r.instance.kind.to_string())).or_default()[slot] += 1;
    }
    let mut t = format!("{} instances, {} checks (n <= {max_n}, k <= {max_k})\n", instances.len(), reports.len());
    writeln!(t, "{:<32} {:<12} {:>6} {:>6} {:>13}", "claim", "kind", "holds", "fails", "inconclusive").unwrap();
    for ((claim, kind), [h, f, i]) in &tally {
        writeln!(t, "{claim:<32} {kind:<12} {h:>6} {f:>6} {i:>13}").unwrap();
    }
    for r in reports.iter().filter(|r| r.verdict != Verdict::Holds) {
        writeln!(t, "  {} k={} {}: {}", r.instance.graph, r.instance.k, r.instance.kind, report_line(r)).unwrap();
    }
    if let Some(path) = &out {
        let text = serde_json::to_string_pretty(&ctx.envelope("sweep", &reports)).unwrap();
        fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    ctx.emit("sweep", &t, &reports);
    status(&reports)
}

fn question(ctx: &Ctx, graphs: Vec<String>, ks: Vec<u32>) -> Result<(), CliError> {
    let graphs = if graphs.is_empty() {
        ["cycle:4", "cycle:6", "path:4", "path:5", "star:3", "star:4"].map(String::from).to_vec()
    } else {
        graphs
    };
    let ks = if ks.is_empty() { vec![1, 2] } else { ks };
    let mut reports = Vec::new();
    let mut t = format!("{:<16} {:>2} {:>7}  {:<17} verdict\n", "graph", "k", "sdepth", "flag");
    for name in &graphs {
        let g = input::graph(name)?;
        for &k in &ks {
            let r = question_experiment(&g, k, ctx.budget)?;
            let s = r.sdepth.as_ref().expect("question runs the oracle");
            let flag = if s.exact { "exact" } else { "lower-bound only" };
            writeln!(t, "{name:<16} {k:>2} {:>7}  {flag:<17} {}", s.value, r.verdict).unwrap();
            reports.push(r);
        }
    }
    ctx.emit("question", &t, &reports);
    if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        return Err(CliError::Budget("some rows are inconclusive within the budget".into()));
    }
    Ok(())
}
