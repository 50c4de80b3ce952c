use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tr2dom::bounds::{bound_report, ParamValues};
use tr2dom::closed_forms::{classify, formula_value};
use tr2dom::graph::{encode_edge_list, encode_graph6, parse_auto, FamilySpec, Graph};
use tr2dom::harness::{
    enumerate_connected_graphs, enumerate_trees, replay, sweep, Check, Corpus, Outcome, SweepConfig,
};
use tr2dom::labeling::{check_tr2df, Labeling};
use tr2dom::reduction::{reduce, Variant, X3CInstance};
use tr2dom::solvers::{solve, Method, Param, SolveResult, SolverConfig};
use tr2dom::tree_dp::{dp_trace, DpState};

#[derive(Parser)]
#[command(name = "tr2dom", version, about = "Exact total Roman {2}-domination and related parameters")]
struct Cli {
    /// Output format; each command picks a sensible default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Wall-clock budget per solve, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Search-node budget per solve.
    #[arg(long, global = true)]
    node_budget: Option<u64>,
    /// Worker threads for sweeps (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphOut {
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct Input {
    /// Graph file (graph6 lines or an `n m` edge list); stdin when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one parameter with a witness.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "tr2")]
        param: Param,
        /// auto, brute, bb, treedp or closed.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Print the tree DP table at this vertex instead of solving.
        #[arg(long, value_name = "VERTEX")]
        trace_dp: Option<usize>,
    },
    /// Check a labeling against the total Roman {2}-domination conditions.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Whitespace-separated values, e.g. "0 2 1 1".
        #[arg(long)]
        labeling: String,
    },
    /// All five parameters.
    Params {
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate every bound.
    Bounds {
        #[command(flatten)]
        input: Input,
    },
    /// Report which value characterization a graph falls under.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Build the gadget graph for an exact-cover-by-3-sets instance.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "bipartite")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "graph6")]
        out: GraphOut,
        /// Also print the threshold k (on stderr for graph outputs).
        #[arg(long)]
        emit_k: bool,
    },
    /// Generate graphs.
    Gen {
        /// Family spec such as `path:7`, `cycle:3..9`, `corona(path:3)`.
        #[arg(long)]
        family: Vec<String>,
        /// Every labeled tree of this order.
        #[arg(long)]
        trees: Option<usize>,
        /// Every connected labeled graph of this order.
        #[arg(long)]
        connected: Option<usize>,
        #[arg(long, value_enum, default_value = "graph6")]
        out: GraphOut,
    },
    /// Run the verification checks over a corpus; exits 1 on any failure.
    Sweep {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Comma-separated checks; all when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 20)]
        max_examples: usize,
    },
    /// Re-run one check on one graph6 string.
    Replay {
        #[arg(long)]
        check: Check,
        graph6: String,
    },
    /// Closed-form value for a family.
    Formula {
        /// Family name (`path`) or a full spec (`double-star:3,3`).
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CorpusArgs {
    /// All labeled trees of order 2..=N.
    #[arg(long, value_name = "N")]
    trees: Option<usize>,
    /// All connected labeled graphs of order 2..=N.
    #[arg(long, value_name = "N")]
    graphs: Option<usize>,
    /// A graph6 file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Family specs; `name:a..b` expands to a range.
    #[arg(long)]
    family: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(input: &Input) -> Result<String> {
    match input.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn read_graphs(input: &Input) -> Result<Vec<Graph>> {
    Ok(parse_auto(&read_input(input)?)?)
}

fn expand_families(specs: &[String]) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for s in specs {
        let range = s.split_once(':').and_then(|(name, args)| {
            let (a, b) = args.split_once("..")?;
            Some((name, a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?))
        });
        match range {
            Some((name, a, b)) => {
                for n in a..=b {
                    out.push(format!("{name}:{n}").parse()?);
                }
            }
            None => out.push(s.parse()?),
        }
    }
    Ok(out)
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string(v)?);
    Ok(())
}

fn print_graph(g: &Graph, out: GraphOut) {
    match out {
        GraphOut::Graph6 => println!("{}", encode_graph6(g)),
        GraphOut::Edgelist => print!("{}", encode_edge_list(g)),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let solver = SolverConfig {
        node_budget: cli.node_budget,
        time_budget: cli.budget_ms.map(Duration::from_millis),
        force_method: None,
    };
    let format = cli.format;
    match cli.command {
        Command::Solve { input, param, method, trace_dp } => {
            let graphs = read_graphs(&input)?;
            if let Some(v) = trace_dp {
                for g in &graphs {
                    let row = dp_trace(g, v)?;
                    let table: Vec<_> = DpState::ALL
                        .iter()
                        .map(|s| json!({ "state": s.to_string(), "min_weight": row[*s as usize] }))
                        .collect();
                    print_json(&json!({ "vertex": v, "table": table }))?;
                }
                return Ok(true);
            }
            let force_method = match method.as_str() {
                "auto" => None,
                m => Some(m.parse::<Method>().map_err(anyhow::Error::msg)?),
            };
            let cfg = SolverConfig { force_method, ..solver };
            let fmt = format.unwrap_or(Format::Json);
            if fmt == Format::Csv {
                println!("graph,value,method,nodes,millis,witness");
            }
            for (i, g) in graphs.iter().enumerate() {
                let r = solve(g, param, &cfg)?;
                emit_solve(i, &r, fmt)?;
            }
            Ok(true)
        }
        Command::Verify { input, labeling } => {
            let graphs = read_graphs(&input)?;
            let [g] = graphs.as_slice() else { bail!("verify expects exactly one graph") };
            let f: Labeling = labeling.parse()?;
            let result = check_tr2df(g, &f);
            let ok = result.is_ok();
            match format.unwrap_or(Format::Json) {
                Format::Json => print_json(&json!({
                    "valid": ok,
                    "weight": f.weight(),
                    "violations": result.as_ref().err().map(|e| e.violations().to_vec()).unwrap_or_default(),
                    "error": result.as_ref().err().map(|e| e.to_string()),
                }))?,
                _ => match &result {
                    Ok(()) => println!("valid, weight {}", f.weight()),
                    Err(e) if e.violations().is_empty() => println!("invalid: {e}"),
                    Err(e) => {
                        println!("invalid, weight {}", f.weight());
                        for v in e.violations() {
                            println!("vertex {}: {}", v.vertex, v.detail);
                        }
                    }
                },
            }
            Ok(ok)
        }
        Command::Params { input } => {
            let fmt = format.unwrap_or(Format::Json);
            if fmt == Format::Csv {
                println!("graph,tr2,dom,total,r2,double");
            }
            for (i, g) in read_graphs(&input)?.iter().enumerate() {
                let p = ParamValues::compute(g, &solver)?;
                match fmt {
                    Format::Json => print_json(&p)?,
                    Format::Csv => println!("{i},{},{},{},{},{}", p.tr2, p.dom, p.total, p.r2, p.double),
                    Format::Text => println!(
                        "graph {i}: tr2={} dom={} total={} r2={} double={}",
                        p.tr2, p.dom, p.total, p.r2, p.double
                    ),
                }
            }
            Ok(true)
        }
        Command::Bounds { input } => {
            let fmt = format.unwrap_or(Format::Csv);
            if fmt == Format::Csv {
                println!("graph_id,bound,applicable,lhs,rhs,holds,tight");
            }
            let mut ok = true;
            for g in read_graphs(&input)? {
                let params = ParamValues::compute(&g, &solver)?;
                let r = bound_report(&g, Some(&params))?;
                ok &= r.entries.iter().all(|e| !e.violated());
                let id = encode_graph6(&g);
                match fmt {
                    Format::Json => print_json(&json!({ "graph_id": id, "report": r }))?,
                    Format::Csv | Format::Text => {
                        for e in &r.entries {
                            println!("{id},{},{},{},{},{},{}", e.name, e.applicable, e.lhs, e.rhs, e.holds, e.tight);
                        }
                    }
                }
            }
            Ok(ok)
        }
        Command::Classify { input } => {
            for g in read_graphs(&input)? {
                let c = classify(&g)?;
                match format.unwrap_or(Format::Json) {
                    Format::Json => print_json(&c)?,
                    _ => println!("{:?}{}", c.kind, if c.also_value_n { " (also ValueN)" } else { "" }),
                }
            }
            Ok(true)
        }
        Command::Reduce { input, variant, out, emit_k } => {
            let inst: X3CInstance = read_input(&input)?.parse()?;
            let red = reduce(&inst, variant);
            if format == Some(Format::Json) {
                print_json(&json!({
                    "k": red.k,
                    "variant": red.variant,
                    "order": red.graph.order(),
                    "graph6": encode_graph6(&red.graph),
                    "vertex_map": red.vertex_map,
                }))?;
            } else {
                print_graph(&red.graph, out);
                if emit_k {
                    eprintln!("k={}", red.k);
                }
            }
            Ok(true)
        }
        Command::Gen { family, trees, connected, out } => {
            for spec in expand_families(&family)? {
                print_graph(&spec.generate()?, out);
            }
            if let Some(n) = trees {
                enumerate_trees(n)?.for_each(|g| print_graph(&g, out));
            }
            if let Some(n) = connected {
                enumerate_connected_graphs(n)?.for_each(|g| print_graph(&g, out));
            }
            Ok(true)
        }
        Command::Sweep { corpus, checks, max_examples } => {
            let corpus = if let Some(n) = corpus.trees {
                Corpus::AllTreesUpTo(n)
            } else if let Some(n) = corpus.graphs {
                Corpus::AllConnectedGraphsUpTo(n)
            } else if let Some(p) = corpus.file {
                Corpus::Graph6File(p)
            } else {
                Corpus::Families(expand_families(&corpus.family)?)
            };
            let checks = if checks.is_empty() { Check::ALL.to_vec() } else { checks };
            let mut cfg = SweepConfig::new(corpus, checks);
            cfg.solver = solver;
            cfg.jobs = cli.jobs;
            cfg.max_examples = max_examples;
            let report = sweep(&cfg)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Csv => {
                    println!("check,passed,failed,skipped,budget_exceeded");
                    for (c, n) in &report.checks {
                        println!("{c},{},{},{},{}", n.passed, n.failed, n.skipped, n.budget_exceeded);
                    }
                }
                Format::Text => {
                    println!("{} graphs in {:.1?}{}", report.graphs, report.elapsed, if report.partial { " (partial)" } else { "" });
                    for (c, n) in &report.checks {
                        println!(
                            "{c:<18} pass {:>8}  fail {:>6}  skip {:>8}  budget {:>4}",
                            n.passed, n.failed, n.skipped, n.budget_exceeded
                        );
                    }
                    for ce in &report.counterexamples {
                        println!("FAIL {} {} {}: {}", ce.check, ce.graph6, ce.id, ce.detail);
                    }
                    for (bound, t) in &report.tight {
                        println!("tight {bound}: {} (e.g. {})", t.count, t.examples.join(" "));
                    }
                }
            }
            Ok(report.all_passed())
        }
        Command::Replay { check, graph6 } => {
            let mut cfg = SweepConfig::new(Corpus::Families(Vec::new()), [check]);
            cfg.solver = solver;
            let outcome = replay(check, &graph6, &cfg)?;
            let (status, detail) = match &outcome {
                Outcome::Pass => ("pass", None),
                Outcome::Fail(d) => ("fail", Some(d.as_str())),
                Outcome::Skip => ("skip", None),
                Outcome::Budget => ("budget", None),
            };
            match format.unwrap_or(Format::Json) {
                Format::Json => print_json(&json!({ "check": check, "graph6": graph6, "outcome": status, "detail": detail }))?,
                _ => println!("{check} {graph6}: {status}{}", detail.map(|d| format!(" ({d})")).unwrap_or_default()),
            }
            Ok(!matches!(outcome, Outcome::Fail(_)))
        }
        Command::Formula { family, n, m } => {
            let spec: FamilySpec = match (n, m) {
                (Some(n), Some(m)) => format!("{family}:{n},{m}").parse()?,
                (Some(n), None) => format!("{family}:{n}").parse()?,
                (None, None) => family.parse()?,
                (None, Some(_)) => bail!("--m requires --n"),
            };
            let value = formula_value(&spec)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => print_json(&json!({ "family": spec.to_string(), "value": value }))?,
                _ => println!("{value}"),
            }
            Ok(true)
        }
    }
}

fn emit_solve(i: usize, r: &SolveResult, fmt: Format) -> Result<()> {
    let witness = match &r.witness {
        tr2dom::solvers::Witness::Labeling(f) => f.to_string(),
        tr2dom::solvers::Witness::Set(s) => s.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
    };
    let millis = r.elapsed.as_secs_f64() * 1e3;
    match fmt {
        Format::Json => print_json(r)?,
        Format::Csv => println!("{i},{},{:?},{},{millis:.3},{witness}", r.value, r.method, r.nodes_explored),
        Format::Text => {
            println!("value {} via {:?} ({} nodes, {millis:.3} ms)", r.value, r.method, r.nodes_explored);
            println!("witness {witness}");
        }
    }
    Ok(())
}
