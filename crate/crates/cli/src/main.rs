//! `candypass`: batch front end for the candy-passing engine.
//!
//! Exit codes: 0 success, 1 input error, 2 round budget exhausted,
//! 3 counterexample found, 4 resource cap exceeded.

mod sources;

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use candypass::analysis::{self, stabilization_bound, Status};
use candypass::oracle::{self, ExhaustiveOptions, Property, Verdict, DEFAULT_ENUMERATION_CAP};
use candypass::parallel::{self, ClassifyLimits, StopReason, DEFAULT_STATE_CAP};
use candypass::sequential;
use candypass::{rng, Error, Graph, GraphKind};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sources::{parse_config, GraphSource};

const STATE_CAP_VAR: &str = "CHIPFIRE_STATE_CAP";
const DEFAULT_MAX_ROUNDS: u64 = 100_000;

#[derive(Parser)]
#[command(name = "candypass", version, about = "Simulate and verify candy-passing games on graphs")]
struct Cli {
    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also print a human-readable summary.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and report how it ended.
    Simulate(SimulateArgs),
    /// Check the stabilization results over exhaustive or sampled starts.
    Verify(VerifyArgs),
    /// Exact fate (fixed point or cycle) of one start.
    Classify(GameArgs),
    /// Random-start experiment over a graph family; writes CSV.
    Sweep(SweepArgs),
    /// For each total up to --c-max, whether every start stabilizes.
    Probe(ProbeArgs),
    /// Compare sequential chip-firing under random orders.
    Abelian(AbelianArgs),
    /// Print a graph as an edge list or DOT.
    Graph(GraphArgs),
}

#[derive(Args)]
struct GameArgs {
    /// Generator spec (`cycle:6`, `tree:10,seed=3`, `gnp:12,0.3,seed=5`, ...) or edge-list file.
    graph: String,
    /// `explicit:2,0,2,0`, `random:c[,seed]` or `concentrated:c,vertex`.
    config: String,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long)]
    max_rounds: Option<u64>,
    /// Write the per-round trace as CSV.
    #[arg(long)]
    trace_out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: String,
    /// Candy total, or `auto` for 4m - n.
    #[arg(long, default_value = "auto")]
    c: String,
    /// Check every composition (the default unless --trials is given).
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    /// Check this many uniformly random starts instead.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enum_cap: u64,
    #[arg(long)]
    report_out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Generator spec for the graph.
    #[arg(long)]
    family: String,
    /// Comma-separated candy totals; `auto` stands for 4m - n.
    #[arg(long, value_delimiter = ',')]
    c: Vec<String>,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ProbeArgs {
    graph: String,
    #[arg(long)]
    c_max: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enum_cap: u64,
    #[arg(long)]
    report_out: Option<String>,
}

#[derive(Args)]
struct AbelianArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 10)]
    orders: u64,
    /// Write the reference (lowest-index) play's moves as CSV.
    #[arg(long)]
    moves_out: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    graph: String,
    #[arg(long)]
    dot: bool,
}

/// Everything that determines a run's output, echoed into JSON reports.
#[derive(Debug, Clone, Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    command: String,
    graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<u64>,
    seed: u64,
    state_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumeration_cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_rounds: Option<u64>,
    outputs: Vec<String>,
}

impl RunManifest {
    fn new(command: &str, graph: &GraphSource, seed: u64, state_cap: usize) -> Self {
        RunManifest {
            tool: "candypass",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            graph: graph.describe(),
            config: None,
            c: None,
            seed,
            state_cap,
            enumeration_cap: None,
            max_rounds: None,
            outputs: Vec::new(),
        }
    }
}

/// A failed run: exit code plus message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceExhausted { .. } => 4,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

fn state_cap() -> Result<usize, Failure> {
    match std::env::var(STATE_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| input_error(format!("{STATE_CAP_VAR}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn write_file(path: &str, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input_error(format!("cannot write {path}: {e}")))
}

fn load_graph(arg: &str) -> Result<(GraphSource, Graph), Failure> {
    let source = GraphSource::parse(arg)?;
    let graph = source.load()?;
    Ok((source, graph))
}

fn resolve_c(arg: &str, g: &Graph) -> Result<u64, Failure> {
    if arg == "auto" {
        u64::try_from(g.candy_threshold()).map_err(|_| input_error("4m - n is negative for this graph"))
    } else {
        arg.parse().map_err(|_| input_error(format!("--c {arg:?} is neither an integer nor `auto`")))
    }
}

fn simulate(cli: &Cli, args: &SimulateArgs) -> CmdResult {
    let (_, g) = load_graph(&args.game.graph)?;
    let init = parse_config(&args.game.config, g.n(), cli.seed)?;
    let max_rounds = args.max_rounds.unwrap_or_else(|| {
        let bound = g.diameter().ok().and_then(|d| stabilization_bound(g.n(), d, init.total()));
        bound.map_or(DEFAULT_MAX_ROUNDS, |b| b.saturating_add(1).max(DEFAULT_MAX_ROUNDS))
    });
    let trace = parallel::run(&g, &init, max_rounds)?;
    if let Some(path) = &args.trace_out {
        write_file(path, &trace.to_csv())?;
    }
    match trace.stab_round() {
        Some(s) => println!(
            "outcome=fixed_point rounds={} stab_round={s} fixed={}",
            trace.len(),
            trace.final_config()
        ),
        None => println!("outcome=budget rounds={} last={}", trace.len(), trace.final_config()),
    }
    if cli.pretty {
        println!("{:>6}  {:>6}  configuration", "round", "fired");
        println!("{:>6}  {:>6}  {}", 0, "-", trace.initial);
        for r in trace.rounds.iter().take(50) {
            println!("{:>6}  {:>6}  {}", r.t, r.fired.len(), r.config);
        }
        if trace.len() > 50 {
            println!("  ... {} more rounds", trace.len() - 50);
        }
    }
    Ok(if trace.stop == StopReason::FixedPoint { 0 } else { 2 })
}

#[derive(Serialize)]
struct VerifyCounterexample {
    config: candypass::Configuration,
    /// Lexicographic rank (exhaustive mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<u64>,
    /// Trial index and its configuration seed (sampled mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    config_seed: Option<u64>,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Box<analysis::VerificationReport>>,
}

#[derive(Serialize)]
struct VerifyReport {
    manifest: RunManifest,
    graph: candypass::graph::GraphSummary,
    c: u64,
    threshold: i64,
    bound: Option<u64>,
    mode: &'static str,
    configs_checked: u64,
    status: &'static str,
    counterexample: Option<VerifyCounterexample>,
}

fn verify(cli: &Cli, args: &VerifyArgs) -> CmdResult {
    let (source, g) = load_graph(&args.graph)?;
    g.require_checkable()?;
    let c = resolve_c(&args.c, &g)?;
    let cap = state_cap()?;
    let limits = ClassifyLimits { state_cap: cap, ..ClassifyLimits::default() };
    let mut manifest = RunManifest::new("verify", &source, cli.seed, cap);
    manifest.c = Some(c);

    let (mode, checked, counterexample) = match args.trials {
        None => {
            manifest.enumeration_cap = Some(args.enum_cap);
            let opts = ExhaustiveOptions { enumeration_cap: args.enum_cap, classify: limits };
            match oracle::exhaustive_verify_with(&g, c, Property::All, &opts)? {
                Verdict::Pass { configs } => ("exhaustive", configs, None),
                Verdict::Counterexample { config, rank, detail, report } => (
                    "exhaustive",
                    rank + 1,
                    Some(VerifyCounterexample { config, rank: Some(rank), trial: None, config_seed: None, detail, report }),
                ),
            }
        }
        Some(trials) => {
            let mut found = None;
            let mut checked = 0;
            for trial in 0..trials {
                let config_seed = rng::derive(cli.seed, trial);
                let init = oracle::random_config(g.n(), c, config_seed)?;
                checked += 1;
                if let Some((detail, report)) = oracle::check_one(&g, &init, Property::All, limits)? {
                    found = Some(VerifyCounterexample {
                        config: init,
                        rank: None,
                        trial: Some(trial),
                        config_seed: Some(config_seed),
                        detail,
                        report,
                    });
                    break;
                }
            }
            ("sampled", checked, found)
        }
    };

    if let Some(path) = &args.report_out {
        manifest.outputs.push(path.clone());
    }
    let status = if counterexample.is_some() { "counterexample" } else { "pass" };
    let report = VerifyReport {
        manifest,
        graph: g.summary(),
        c,
        threshold: g.candy_threshold(),
        bound: g.diameter().ok().and_then(|d| stabilization_bound(g.n(), d, c)),
        mode,
        configs_checked: checked,
        status,
        counterexample,
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &args.report_out {
        Some(path) => {
            write_file(path, &json)?;
            let mut line = format!("status={status} mode={mode} configs={checked} c={c}");
            if let Some(cx) = &report.counterexample {
                let _ = write!(line, " counterexample={}", cx.config);
            }
            println!("{line}");
        }
        None => print!("{json}"),
    }
    if cli.pretty {
        print_verify_table(&report);
    }
    Ok(if report.counterexample.is_some() { 3 } else { 0 })
}

fn print_verify_table(report: &VerifyReport) {
    println!("graph      n={} m={} diameter={:?}", report.graph.n, report.graph.m, report.graph.diameter);
    println!("candies    c={} (4m - n = {})", report.c, report.threshold);
    println!("bound      n d c = {:?}", report.bound);
    println!("checked    {} configurations ({})", report.configs_checked, report.mode);
    match &report.counterexample {
        None => println!("result     every check passed"),
        Some(cx) => {
            println!("result     counterexample {}: {}", cx.config, cx.detail);
            if let Some(rep) = &cx.report {
                for check in &rep.checks {
                    let mark = match check.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::NotApplicable => "n/a",
                    };
                    println!("  {mark:>4}  {}", check.name);
                }
            }
        }
    }
}

fn classify_cmd(cli: &Cli, args: &GameArgs) -> CmdResult {
    let (_, g) = load_graph(&args.graph)?;
    let init = parse_config(&args.config, g.n(), cli.seed)?;
    let limits = ClassifyLimits { state_cap: state_cap()?, ..ClassifyLimits::default() };
    let outcome = parallel::classify_with(&g, &init, limits)?;
    println!("{}", serde_json::to_string(&outcome).expect("outcomes serialize"));
    Ok(0)
}

fn sweep(cli: &Cli, args: &SweepArgs) -> CmdResult {
    let family: GraphKind = args.family.parse()?;
    let g = family.generate()?;
    let c_values = args
        .c
        .iter()
        .map(|s| resolve_c(s.trim(), &g))
        .collect::<Result<Vec<_>, _>>()?;
    if c_values.is_empty() {
        return Err(input_error("--c needs at least one value"));
    }
    let rows = analysis::sweep_experiment(&family, &c_values, args.trials, cli.seed)?;
    let csv = analysis::sweep_csv(&rows);
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            let stabilized = rows.iter().filter(|r| r.stab_round.is_some()).count();
            println!("rows={} stabilized={stabilized} periodic={}", rows.len(), rows.len() - stabilized);
        }
        None => print!("{csv}"),
    }
    Ok(0)
}

#[derive(Serialize)]
struct ProbeReport {
    manifest: RunManifest,
    graph: candypass::graph::GraphSummary,
    #[serde(flatten)]
    probe: analysis::ThresholdProbe,
}

fn probe(cli: &Cli, args: &ProbeArgs) -> CmdResult {
    let (source, g) = load_graph(&args.graph)?;
    let cap = state_cap()?;
    let opts = ExhaustiveOptions {
        enumeration_cap: args.enum_cap,
        classify: ClassifyLimits { state_cap: cap, ..ClassifyLimits::default() },
    };
    let probe = analysis::threshold_probe_with(&g, args.c_max, &opts)?;
    let mut manifest = RunManifest::new("probe", &source, cli.seed, cap);
    manifest.enumeration_cap = Some(args.enum_cap);
    if let Some(path) = &args.report_out {
        manifest.outputs.push(path.clone());
    }
    let violated = probe.c_star_within_threshold == Some(false);
    let summary = format!(
        "c_star={} monotone={} threshold={}",
        probe.c_star.map_or("none".into(), |c| c.to_string()),
        probe.monotone,
        probe.threshold
    );
    if cli.pretty {
        for e in &probe.entries {
            let verdict = match &e.counterexample {
                None => "all stabilize".to_string(),
                Some(cx) => format!("counterexample {cx}"),
            };
            println!("c={:<4} configs={:<8} {verdict}", e.c, e.configs);
        }
    }
    let report = ProbeReport { manifest, graph: g.summary(), probe };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &args.report_out {
        Some(path) => {
            write_file(path, &json)?;
            println!("{summary}");
        }
        None => print!("{json}"),
    }
    Ok(if violated { 3 } else { 0 })
}

fn abelian(cli: &Cli, args: &AbelianArgs) -> CmdResult {
    let (_, g) = load_graph(&args.game.graph)?;
    let init = parse_config(&args.game.config, g.n(), cli.seed)?;
    let report = sequential::check_abelian(&g, &init, args.orders, cli.seed)?;
    if let Some(path) = &args.moves_out {
        let limits = sequential::SeqLimits { state_cap: state_cap()?, ..Default::default() };
        let (_, moves) = sequential::seq_run_logged(&g, &init, sequential::Policy::LowestIndex, limits)?;
        write_file(path, &sequential::moves_csv(g.n(), &moves))?;
    }
    println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    Ok(if report.passed() { 0 } else { 3 })
}

fn graph_cmd(args: &GraphArgs) -> CmdResult {
    let (_, g) = load_graph(&args.graph)?;
    if args.dot {
        print!("{}", g.to_dot());
    } else {
        print!("{}", g.to_edge_list());
    }
    let v = g.validate();
    eprintln!(
        "n={} m={} diameter={} threshold={} simple={} connected={} degree_sum_ok={} degenerate={}",
        g.n(),
        g.m(),
        g.diameter().map_or("undefined".into(), |d| d.to_string()),
        g.candy_threshold(),
        v.simple,
        v.connected,
        v.degree_sum_ok,
        v.degenerate
    );
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => simulate(&cli, a),
        Command::Verify(a) => verify(&cli, a),
        Command::Classify(a) => classify_cmd(&cli, a),
        Command::Sweep(a) => sweep(&cli, a),
        Command::Probe(a) => probe(&cli, a),
        Command::Abelian(a) => abelian(&cli, a),
        Command::Graph(a) => graph_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
