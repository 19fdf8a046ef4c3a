//! Command-line surface over the library: color, verify, chi, detect, gen,
//! fuzz. Exit codes are stable: 0 success, 1 input error, 2 detector
//! exhausted, 3 fuzz failures.

use std::error::Error;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use odd5::coloring::verify_odd;
use odd5::oracle::{chi_odd, DEFAULT_MAX_ORACLE_N};
use odd5::{
    coloring_to_json, find_config_2bp, find_config_o1p, gen_2bp, gen_o1p, graph_to_json,
    odd_five_color_2bp_with, odd_five_color_o1p_with, read_coloring, read_graph,
    write_coloring, Coloring, Detection, GenError, GenParams, Graph, GraphClass, Instance,
    OddVerdict, SolveOptions, SpecialKind, SOLVER_K,
};

#[derive(Parser)]
#[command(
    name = "odd5",
    version,
    about = "Certified odd 5-colorings of outer-1-planar and 2-boundary planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Color a graph so that every non-isolated vertex sees some color an odd number of times
    Color(ColorArgs),
    /// Check a coloring file against a graph file
    Verify(VerifyArgs),
    /// Exact odd chromatic number by exhaustive search
    Chi(ChiArgs),
    /// Report one reducible configuration, or the exceptional family
    Detect(DetectArgs),
    /// Write a seeded random instance
    Gen(GenArgs),
    /// Generate, solve, and verify many seeded instances
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct ColorArgs {
    /// Graph JSON file
    graph: PathBuf,
    /// Palette size to stamp on the output coloring (at least 5)
    #[arg(long, default_value_t = SOLVER_K)]
    k: u32,
    /// Write the reduction trace as JSON
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write a DOT rendering of the colored graph
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Coloring JSON destination (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    coloring: PathBuf,
}

#[derive(Args)]
struct ChiArgs {
    graph: PathBuf,
    /// Largest vertex count the exhaustive search will accept
    #[arg(long, default_value_t = DEFAULT_MAX_ORACLE_N)]
    max_n: usize,
    /// Write a witness coloring at the reported value
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    graph: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_class)]
    class: GraphClass,
    /// JSON file of generator parameters; explicit flags win on conflict
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_out: Option<usize>,
    #[arg(long)]
    n_in: Option<usize>,
    #[arg(long)]
    chord_density: Option<f64>,
    #[arg(long)]
    crossing_density: Option<f64>,
    #[arg(long)]
    inter_edge_density: Option<f64>,
    /// Number of vertices shared by the two boundaries
    #[arg(long = "shared")]
    shared_vertex_count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Graph JSON destination (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, value_parser = parse_class)]
    class: GraphClass,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Largest instance size drawn per trial
    #[arg(long, default_value_t = 40)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    GraphClass::from_str(s)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.cmd {
        Cmd::Color(args) => cmd_color(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Chi(args) => cmd_chi(args),
        Cmd::Detect(args) => cmd_detect(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Fuzz(args) => cmd_fuzz(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

type CmdResult = Result<i32, Box<dyn Error>>;

fn solve_options() -> Result<SolveOptions, Box<dyn Error>> {
    let mut opts = SolveOptions::default();
    if let Ok(v) = std::env::var("ODD5_MAX_ORACLE_N") {
        opts.oracle_guard = v
            .trim()
            .parse()
            .map_err(|_| format!("ODD5_MAX_ORACLE_N must be an integer, got {v:?}"))?;
    }
    Ok(opts)
}

fn solve(inst: &Instance, opts: &SolveOptions) -> Result<(Coloring, odd5::SolveTrace), odd5::SolveError> {
    match inst {
        Instance::OuterOnePlanar(e) => odd_five_color_o1p_with(e, opts),
        Instance::TwoBoundaryPlanar(e) => odd_five_color_2bp_with(e, opts),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Box<dyn Error>> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_color(args: ColorArgs) -> CmdResult {
    if args.k < SOLVER_K {
        return Err(format!("--k must be at least {SOLVER_K}").into());
    }
    let inst = read_graph(&args.graph)?;
    let opts = solve_options()?;
    let (tau, trace) = match solve(&inst, &opts) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(2);
        }
    };
    let tau = if args.k == tau.k() {
        tau
    } else {
        let mut wide = Coloring::new(args.k, tau.n_slots());
        for v in 0..tau.n_slots() {
            if let Some(c) = tau.get(v) {
                wide.set(v, c);
            }
        }
        wide
    };
    if let Some(p) = &args.trace {
        std::fs::write(p, serde_json::to_string_pretty(&trace)?)?;
    }
    if let Some(p) = &args.dot {
        std::fs::write(p, render_dot(inst.graph(), &tau))?;
    }
    emit(args.output.as_deref(), &coloring_to_json(&tau))?;
    Ok(0)
}

fn render_dot(g: &Graph, tau: &Coloring) -> String {
    let mut out = String::from("graph odd5 {\n  node [colorscheme=set19, style=filled];\n");
    for v in 0..g.n_slots() {
        match tau.get(v) {
            Some(c) => writeln!(out, "  {v} [fillcolor={c}];").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let inst = read_graph(&args.graph)?;
    let g = inst.graph();
    let tau = read_coloring(&args.coloring, g.n_slots())?;
    match verify_odd(g, &tau) {
        OddVerdict::Valid => {
            println!("valid");
            Ok(0)
        }
        OddVerdict::Uncolored(v) => {
            println!("invalid: vertex {v} is uncolored");
            Ok(1)
        }
        OddVerdict::ImproperEdge(u, v) => {
            println!("invalid: edge ({u}, {v}) joins two vertices of the same color");
            Ok(1)
        }
        OddVerdict::MissingOddColor(v) => {
            println!("invalid: no color appears an odd number of times around vertex {v}");
            Ok(1)
        }
    }
}

fn cmd_chi(args: ChiArgs) -> CmdResult {
    let inst = read_graph(&args.graph)?;
    let g = inst.graph();
    if g.n_slots() > args.max_n {
        return Err(format!(
            "graph has {} vertices; the exhaustive search is capped at {} (raise --max-n)",
            g.n_slots(),
            args.max_n
        )
        .into());
    }
    let (chi, witness) = chi_odd(g);
    println!("{chi}");
    if let Some(p) = &args.witness {
        match witness {
            Some(tau) => write_coloring(p, &tau)?,
            None => eprintln!("the empty graph has no witness coloring"),
        }
    }
    Ok(0)
}

fn cmd_detect(args: DetectArgs) -> CmdResult {
    let inst = read_graph(&args.graph)?;
    match &inst {
        Instance::OuterOnePlanar(e) => match find_config_o1p(e) {
            Ok(cfg) => {
                println!("{}", serde_json::to_string(&cfg)?);
                Ok(0)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(2)
            }
        },
        Instance::TwoBoundaryPlanar(e) => match find_config_2bp(e) {
            Ok(Detection::Config(cfg)) => {
                println!("{}", serde_json::to_string(&cfg)?);
                Ok(0)
            }
            Ok(Detection::Special(s)) => {
                match s.kind {
                    SpecialKind::Prism(n) => println!("M({n})"),
                    SpecialKind::Antiprism(n) => println!("P({n})"),
                }
                Ok(0)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(2)
            }
        },
    }
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let mut params: GenParams = match &args.config {
        Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
        None => GenParams::default(),
    };
    if let Some(v) = args.n {
        params.n = v;
    }
    if let Some(v) = args.n_out {
        params.n_out = v;
    }
    if let Some(v) = args.n_in {
        params.n_in = v;
    }
    if let Some(v) = args.chord_density {
        params.chord_density = v;
    }
    if let Some(v) = args.crossing_density {
        params.crossing_density = v;
    }
    if let Some(v) = args.inter_edge_density {
        params.inter_edge_density = v;
    }
    if let Some(v) = args.shared_vertex_count {
        params.shared_vertex_count = v;
    }
    if let Some(v) = args.seed {
        params.seed = v;
    }
    let inst = match args.class {
        GraphClass::OuterOnePlanar => Instance::OuterOnePlanar(gen_o1p(&params)?),
        GraphClass::TwoBoundaryPlanar => Instance::TwoBoundaryPlanar(gen_2bp(&params)?),
    };
    emit(args.output.as_deref(), &graph_to_json(&inst)?)?;
    Ok(0)
}

#[derive(Serialize)]
enum FailureKind {
    InvalidColoring,
    DetectorExhausted,
    ValidatorReject,
}

#[derive(Serialize)]
struct Failure {
    seed: u64,
    params: GenParams,
    #[serde(rename = "failureKind")]
    failure_kind: FailureKind,
}

#[derive(Serialize)]
struct FuzzReport {
    trials: u64,
    failures: Vec<Failure>,
    elapsed: f64,
}

fn fuzz_params(class: GraphClass, trial_seed: u64, max_n: usize) -> GenParams {
    let mut r = ChaCha8Rng::seed_from_u64(trial_seed ^ 0x5eed_f00d);
    match class {
        GraphClass::OuterOnePlanar => GenParams {
            n: r.gen_range(1..=max_n.max(1)),
            chord_density: r.gen(),
            crossing_density: r.gen(),
            seed: trial_seed,
            ..GenParams::default()
        },
        GraphClass::TwoBoundaryPlanar => {
            let hi = max_n.max(4);
            let n_out = r.gen_range(3..=hi - 1);
            let n_in = r.gen_range(0..=hi - n_out);
            let shared_vertex_count = if n_in >= 3 && r.gen_bool(0.2) {
                r.gen_range(1..3)
            } else {
                0
            };
            GenParams {
                n_out,
                n_in,
                inter_edge_density: r.gen(),
                crossing_density: r.gen(),
                shared_vertex_count,
                seed: trial_seed,
                ..GenParams::default()
            }
        }
    }
}

fn build(class: GraphClass, params: &GenParams) -> Result<Instance, GenError> {
    Ok(match class {
        GraphClass::OuterOnePlanar => Instance::OuterOnePlanar(gen_o1p(params)?),
        GraphClass::TwoBoundaryPlanar => Instance::TwoBoundaryPlanar(gen_2bp(params)?),
    })
}

fn run_trial(
    class: GraphClass,
    trial_seed: u64,
    max_n: usize,
    opts: &SolveOptions,
    failures: &mut Vec<Failure>,
) {
    let mut params = fuzz_params(class, trial_seed, max_n);
    let fail = |kind, params: &GenParams| Failure {
        seed: trial_seed,
        params: params.clone(),
        failure_kind: kind,
    };
    let inst = match build(class, &params) {
        Ok(i) => i,
        Err(GenError::SharedInfeasible { .. }) => {
            params.shared_vertex_count = 0;
            match build(class, &params) {
                Ok(i) => i,
                Err(_) => {
                    failures.push(fail(FailureKind::ValidatorReject, &params));
                    return;
                }
            }
        }
        Err(_) => {
            failures.push(fail(FailureKind::ValidatorReject, &params));
            return;
        }
    };
    let (tau, _) = match solve(&inst, opts) {
        Ok(x) => x,
        Err(_) => {
            failures.push(fail(FailureKind::DetectorExhausted, &params));
            return;
        }
    };
    let g = inst.graph();
    let used = tau.colors_used().len();
    let mut ok = verify_odd(g, &tau).is_valid() && used <= SOLVER_K as usize;
    if ok && g.n_slots() <= 10 {
        let (chi, _) = chi_odd(g);
        ok = chi <= SOLVER_K && chi as usize <= used.max(1);
    }
    if !ok {
        failures.push(fail(FailureKind::InvalidColoring, &params));
    }
}

fn cmd_fuzz(args: FuzzArgs) -> CmdResult {
    let opts = solve_options()?;
    let start = Instant::now();
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(args.trials as usize)
        .max(1);
    let chunks: Vec<Vec<Failure>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut fails = Vec::new();
                    let mut t = w as u64;
                    while t < args.trials {
                        run_trial(
                            args.class,
                            args.seed.wrapping_add(t),
                            args.max_n,
                            &opts,
                            &mut fails,
                        );
                        t += workers as u64;
                    }
                    fails
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failures: Vec<Failure> = chunks.into_iter().flatten().collect();
    failures.sort_by_key(|f| f.seed);
    let report = FuzzReport {
        trials: args.trials,
        failures,
        elapsed: start.elapsed().as_secs_f64(),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.failures.is_empty() { 0 } else { 3 })
}
