use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use edd_core::{validate_solution, EddInstance, EddSolution, GeneratorConfig, Topology, Weight};

use crate::algo::Algorithm;
use crate::bench::{run_sweep, SweepSpec};
use crate::datasets::{load_edgelist, load_stations};
use crate::error::{write, Error};
use crate::format::{load_instance, save_instance, save_solution};
use crate::lp::export_lp;

pub const EXIT_USER: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "edd", version, about = "Edge data distribution planner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance file.
    Solve(SolveArgs),
    /// Generate an instance file.
    Gen(GenArgs),
    /// Run a parameter sweep and write CSV.
    Bench(BenchArgs),
    /// Write the integer program in LP format.
    ExportLp(ExportArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algorithm,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the plan as a solution file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of plain lines.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, required_unless_present = "edgelist")]
    nodes: Option<usize>,
    #[arg(long, conflicts_with = "edges")]
    delta: Option<f64>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long, conflicts_with = "dest")]
    rho: Option<f64>,
    #[arg(long)]
    dest: Option<usize>,
    #[arg(long)]
    gamma: Weight,
    #[arg(long)]
    llimit: Weight,
    #[arg(long, default_value_t = 1)]
    wmin: Weight,
    #[arg(long, default_value_t = 50)]
    wmax: Weight,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Place servers on stations from this CSV (id, latitude, longitude).
    #[arg(long, conflicts_with = "edgelist")]
    eua: Option<PathBuf>,
    /// With --eua, sample stations instead of taking the first ones.
    #[arg(long, requires = "eua")]
    sample: bool,
    /// Take the topology from a `u v [w]` edge list.
    #[arg(long)]
    edgelist: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Sweep spec in TOML.
    #[arg(long)]
    spec: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    User(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::User(e)
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USER } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => bench(a),
        Command::ExportLp(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USER)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => Ok(write(path, text)?),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

#[derive(serde::Serialize)]
struct SolveReport<'a> {
    algo: &'a str,
    total: Weight,
    c2e: Weight,
    e2e: Weight,
    runtime_s: f64,
    transits: Vec<usize>,
    links: Vec<(usize, usize, Weight)>,
    depth: &'a std::collections::BTreeMap<usize, Weight>,
}

fn solve(a: SolveArgs) -> Result<(), Failure> {
    let instance = load_instance(&a.instance)?;
    let start = Instant::now();
    let sol = a.algo.run(&instance, a.seed).map_err(|e| Failure::Internal(format!("{}: {e}", a.algo)))?;
    let runtime_s = start.elapsed().as_secs_f64();
    let report = validate_solution(&instance, &sol);
    if !report.is_feasible() {
        return Err(Failure::Internal(format!("{} produced an invalid plan: {:?}", a.algo, report.violations)));
    }
    if let Some(path) = &a.out {
        save_solution(&instance, &sol, path)?;
    }
    if a.json {
        let text = serde_json::to_string_pretty(&json_report(&instance, &sol, a.algo, runtime_s))
            .map_err(|e| Failure::Internal(e.to_string()))?;
        emit(None, &format!("{text}\n"))
    } else {
        emit(
            None,
            &format!("total {}\nc2e {}\ne2e {}\ntime_s {runtime_s:.6}\n", sol.total_cost, sol.cost_c2e, sol.cost_e2e),
        )
    }
}

fn json_report<'a>(instance: &EddInstance, sol: &'a EddSolution, algo: Algorithm, runtime_s: f64) -> SolveReport<'a> {
    SolveReport {
        algo: algo.name(),
        total: sol.total_cost,
        c2e: sol.cost_c2e,
        e2e: sol.cost_e2e,
        runtime_s,
        transits: sol.c2e.iter().copied().collect(),
        links: sol
            .e2e
            .iter()
            .map(|&(p, c)| (p, c, instance.network().weight(p, c).unwrap_or(0)))
            .collect(),
        depth: &sol.depth,
    }
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let mut cfg = GeneratorConfig {
        n: a.nodes.unwrap_or(0),
        delta: 1.0,
        rho: 0.5,
        weight_min: a.wmin,
        weight_max: a.wmax,
        gamma: a.gamma,
        l_limit: a.llimit,
        seed: a.seed,
    };
    let per_node = |count: usize, n: usize| if n == 0 { 0.0 } else { count as f64 / n as f64 };
    cfg.delta = match (a.delta, a.edges) {
        (Some(d), _) => d,
        (None, Some(m)) => per_node(m, cfg.n),
        (None, None) => 1.5,
    };
    let rho_for = |n: usize| match (a.rho, a.dest) {
        (Some(p), _) => p,
        (None, Some(k)) => per_node(k, n),
        (None, None) => 0.5,
    };
    cfg.rho = rho_for(cfg.n);
    let instance = if let Some(path) = &a.edgelist {
        let loaded = load_edgelist(path, &GeneratorConfig { rho: a.rho.unwrap_or(0.5), ..cfg.clone() })?;
        for w in &loaded.warnings {
            eprintln!("warning: {w}");
        }
        let n = loaded.instance.node_count();
        match (a.rho, a.dest) {
            (None, Some(_)) => load_edgelist(path, &GeneratorConfig { rho: rho_for(n), ..cfg })?.instance,
            _ => loaded.instance,
        }
    } else if let Some(path) = &a.eua {
        load_stations(path, &cfg, a.sample)?.instance
    } else {
        edd_core::generate(&cfg).map_err(Error::from)?
    };
    save_instance(&instance, &a.out)?;
    let summary = format!(
        "nodes {} edges {} destinations {} gamma {} llimit {} -> {}\n",
        instance.node_count(),
        instance.network().edges().len(),
        instance.destinations().len(),
        instance.gamma(),
        instance.l_limit(),
        a.out.display()
    );
    emit(None, &summary)
}

fn bench(a: BenchArgs) -> Result<(), Failure> {
    let spec = SweepSpec::load(&a.spec)?;
    let result = run_sweep(&spec).map_err(|e| match e {
        Error::Core(e) => Failure::Internal(e.to_string()),
        other => Failure::User(other),
    })?;
    if let Some(bad) = result.records.iter().find(|r| r.costs.is_some_and(|c| !c.feasible)) {
        return Err(Failure::Internal(format!("{} produced an invalid plan (seed {})", bad.algo, bad.seed)));
    }
    emit(a.out.as_ref(), &result.to_csv()?)
}

fn export(a: ExportArgs) -> Result<(), Failure> {
    let instance = load_instance(&a.instance)?;
    emit(a.out.as_ref(), &export_lp(&instance))
}
