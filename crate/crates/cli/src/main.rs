use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use exgraph::bell::{bell_check, BellDecision};
use exgraph::experiments::{
    lemma_suite, reproduce_theorem6, reproduce_theorem8, selftest_cycles, ExperimentReport, LemmaOptions, Verdict,
    THEOREM8_MIN_RESTARTS,
};
use exgraph::graph::{ColouredMultigraph, GraphFile};
use exgraph::opr::seesaw::{ctheta_seesaw, theta_seesaw, SeesawParams};
use exgraph::reductions::{break_edge, merge_colours, path_profile, plus_one_reduce, remove_edge};
use exgraph::{Scalar, SeesawOutcome};

#[derive(Parser)]
#[command(name = "exgraph", version, about = "Exclusivity graphs, Bell multigraphs and see-saw bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a coloured multigraph comes from a Bell scenario.
    BellCheck {
        #[arg(long)]
        graph: PathBuf,
        /// Also print the event of every vertex.
        #[arg(long)]
        labels: bool,
    },
    /// See-saw lower bound on the Lovász number of the shadow graph.
    Theta {
        #[arg(long)]
        graph: PathBuf,
        /// Dimension of the single party (default: number of vertices).
        #[arg(long)]
        dim: Option<usize>,
        /// Write the best representation to this file.
        #[arg(long)]
        emit_opr: Option<PathBuf>,
        #[command(flatten)]
        seesaw: SeesawArgs,
    },
    /// See-saw lower bound on the coloured value of a multigraph.
    Ctheta {
        #[arg(long)]
        graph: PathBuf,
        /// Local dimension per colour, comma separated (default: 2 each).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Retry with one more dimension per party when the optimum is not reproduced.
        #[arg(long)]
        retry: bool,
        /// Write the best representation to this file.
        #[arg(long)]
        emit_opr: Option<PathBuf>,
        #[command(flatten)]
        seesaw: SeesawArgs,
    },
    /// Apply a graph reduction and print the result.
    Reduce(ReduceArgs),
    /// Rerun an experiment and write its report.
    Reproduce {
        #[command(subcommand)]
        experiment: Experiment,
    },
    /// Odd cycles against their closed forms.
    Selftest {
        #[arg(long, value_delimiter = ',', default_value = "5,7")]
        n: Vec<usize>,
        #[command(flatten)]
        seesaw: SeesawArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Bell two-colourings of odd cycles.
    Theorem6 {
        #[arg(long, value_delimiter = ',', default_value = "5,7,9")]
        n: Vec<usize>,
        #[command(flatten)]
        seesaw: SeesawArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-colourings of the complement of the 7-cycle.
    Theorem8 {
        #[command(flatten)]
        seesaw: SeesawArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monotonicity of the reductions on a random corpus and on coloured cycles.
    Lemmas {
        #[arg(long, default_value_t = LemmaOptions::default().corpus_size)]
        corpus_size: usize,
        #[arg(long, default_value_t = LemmaOptions::default().corpus_seed)]
        corpus_seed: u64,
        #[command(flatten)]
        seesaw: SeesawArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SeesawArgs {
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_iters: Option<usize>,
}

impl SeesawArgs {
    fn params(&self, default_restarts: usize) -> Result<SeesawParams> {
        let mut p = SeesawParams::from_env()?.with_seed(self.seed).with_restarts(self.restarts.unwrap_or(default_restarts));
        if let Some(tol) = self.tol {
            p.tol = tol;
        }
        if let Some(m) = self.max_iters {
            p.max_iters = m;
        }
        Ok(p)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the flat per-case table instead of the JSON report.
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceOp {
    Remove,
    Merge,
    PlusOne,
    Break,
    Profile,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    op: ReduceOp,
    /// First endpoint (remove, break).
    #[arg(long)]
    u: Option<usize>,
    /// Second endpoint (remove, break).
    #[arg(long)]
    v: Option<usize>,
    /// Colour name of the removed edge.
    #[arg(long)]
    colour: Option<String>,
    /// The two colours to merge; the second is folded into the first.
    #[arg(long, value_delimiter = ',')]
    colours: Option<Vec<String>>,
    /// Middle vertex of the monochromatic two-path (plus-one).
    #[arg(long)]
    vertex: Option<usize>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::BellCheck { graph, labels } => bell_command(&load(&graph)?, labels),
        Command::Theta { graph, dim, emit_opr, seesaw } => {
            let g = GraphFile::from_json(&read(&graph)?)?.to_graph()?;
            let out = theta_seesaw::<Scalar>(&g, dim, &seesaw.params(SeesawParams::default().restarts)?)?;
            seesaw_output(&out, emit_opr.as_deref())
        }
        Command::Ctheta { graph, dims, retry, emit_opr, seesaw } => {
            let cm = load(&graph)?;
            let dims = dims.unwrap_or_else(|| vec![2; cm.colour_count()]);
            let mut p = seesaw.params(SeesawParams::default().restarts)?;
            p.dimension_retry = retry;
            let out = ctheta_seesaw::<Scalar>(&cm, &dims, &p)?;
            seesaw_output(&out, emit_opr.as_deref())
        }
        Command::Reduce(args) => reduce_command(&args),
        Command::Reproduce { experiment } => match experiment {
            Experiment::Theorem6 { n, seesaw, output } => {
                let report = reproduce_theorem6(&n, &seesaw.params(SeesawParams::default().restarts)?)?;
                write_report(&report, &output)
            }
            Experiment::Theorem8 { seesaw, output } => {
                let report = reproduce_theorem8(&seesaw.params(THEOREM8_MIN_RESTARTS)?)?;
                write_report(&report, &output)
            }
            Experiment::Lemmas { corpus_size, corpus_seed, seesaw, output } => {
                let opts = LemmaOptions { corpus_size, corpus_seed, ..LemmaOptions::default() };
                let report = lemma_suite(&seesaw.params(SeesawParams::default().restarts)?, &opts)?;
                write_report(&report, &output)
            }
        },
        Command::Selftest { n, seesaw, output } => {
            let report = selftest_cycles(&n, &seesaw.params(SeesawParams::default().restarts)?)?;
            write_report(&report, &output)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<ColouredMultigraph> {
    Ok(GraphFile::from_json(&read(path)?)?.to_multigraph()?)
}

fn bell_command(cm: &ColouredMultigraph, labels: bool) -> Result<ExitCode> {
    match bell_check(cm) {
        BellDecision::Accept { scenario, labels: events } => {
            println!("verdict: accept");
            println!("scenario: {scenario}");
            if labels {
                for (k, e) in events.iter().enumerate() {
                    let mut event = Map::new();
                    for (c, s) in e.settings.iter().enumerate() {
                        if let Some((x, a)) = s {
                            event.insert(cm.colours()[c].clone(), json!([x, a]));
                        }
                    }
                    println!("{{\"vertex\":{k},\"event\":{}}}", Value::Object(event));
                }
            }
        }
        BellDecision::Reject(w) => {
            println!("verdict: reject");
            println!(
                "witness: vertices {:?} induce a single-edge triple in colour {} (component {:?})",
                w.triple,
                cm.colours()[w.colour],
                w.component
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn seesaw_output(out: &SeesawOutcome, emit: Option<&Path>) -> Result<ExitCode> {
    if let Some(path) = emit {
        fs::write(path, out.opr.to_json_string()).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", serde_json::to_string_pretty(&out.report)?);
    Ok(ExitCode::SUCCESS)
}

fn reduce_command(args: &ReduceArgs) -> Result<ExitCode> {
    let cm = load(&args.graph)?;
    let edge = || -> Result<(usize, usize)> {
        match (args.u, args.v) {
            (Some(u), Some(v)) => Ok((u, v)),
            _ => bail!("--u and --v are required"),
        }
    };
    let colour = |name: &str| -> Result<usize> {
        cm.colour_index(name).with_context(|| format!("unknown colour {name:?}"))
    };
    let result = match args.op {
        ReduceOp::Remove => {
            let (u, v) = edge()?;
            let name = args.colour.as_deref().context("--colour is required")?;
            remove_edge(&cm, u, v, colour(name)?)?
        }
        ReduceOp::Merge => {
            let pair = args.colours.as_deref().context("--colours c1,c2 is required")?;
            if pair.len() != 2 {
                bail!("--colours takes exactly two colour names");
            }
            merge_colours(&cm, colour(&pair[0])?, colour(&pair[1])?)?
        }
        ReduceOp::PlusOne => plus_one_reduce(&cm, args.vertex.context("--vertex is required")?)?,
        ReduceOp::Break => {
            let (u, v) = edge()?;
            break_edge(&cm, u, v)?
        }
        ReduceOp::Profile => {
            println!("{}", serde_json::to_string_pretty(&path_profile(&cm)?)?);
            return Ok(ExitCode::SUCCESS);
        }
    };
    println!("{}", GraphFile::from(&result).to_json());
    Ok(ExitCode::SUCCESS)
}

/// Exit code 0 on pass, 1 on fail and 3 when inconclusive.
fn write_report(report: &ExperimentReport, output: &OutputArgs) -> Result<ExitCode> {
    let text = if output.csv { report.to_csv() } else { report.to_json() + "\n" };
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    for c in &report.checks {
        eprintln!("[{}] {}: {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    eprintln!("verdict: {:?}: {}", report.verdict, report.statement);
    Ok(match report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::from(1),
        Verdict::Inconclusive => ExitCode::from(3),
    })
}
