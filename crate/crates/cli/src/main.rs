//! `halving-opt`: run the halving solver and its baselines on the built-in
//! corpus or on problem files.
//!
//! Exit codes: 0 on success, 1 on errors, 2 on usage errors, 3 when a run
//! finished but its result carries no accuracy guarantee (the final region
//! misses the minimum by more than eps, or the dual certificate never held).

mod output;
mod run;

use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use halving::dual::{dual_solve, DualDomain, DualProblem, DualSolution, ProblemSpec};
use halving::oracle::corpus;
use halving::{CallCounters, Objective, Point2, StopReason};
use rayon::prelude::*;
use serde::Serialize;

use output::{append_rows, print_json, sci, write_curve, write_json, write_rows, SummaryRow};
use run::{lookup, Method, Noise, Run, Settings};

const EXIT_NO_GUARANTEE: u8 = 3;

#[derive(Parser)]
#[command(name = "halving-opt", version)]
#[command(about = "Gradient-direction halving for convex functions of two variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method on a corpus function, or the dual driver on a problem file
    Solve(SolveArgs),
    /// Run every applicable method on one corpus function
    Compare(CompareArgs),
    /// Solve a problem file through its two-dimensional dual
    Dual(DualArgs),
    /// Cost of each method over a grid of eps values, as CSV
    Sweep(SweepArgs),
    /// List corpus functions
    List,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Target accuracy in function value
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[command(flatten)]
    tuning: Tuning,
    /// Append a summary row to this CSV file
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Tuning {
    /// Line-search accuracy; overrides the computed budget
    #[arg(long)]
    delta: Option<f64>,
    /// Perturb direction queries by at most this much
    #[arg(long)]
    grad_error: Option<f64>,
    /// How the direction error is drawn
    #[arg(long, value_enum, default_value = "random")]
    noise: Noise,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iteration count; overrides the computed budget
    #[arg(long)]
    iterations: Option<u32>,
    /// Disable the small-gradient early stop
    #[arg(long)]
    no_early_stop: bool,
    /// Let the baselines stop once within eps of the known minimum
    #[arg(long)]
    known_minimum: bool,
}

impl Tuning {
    fn settings(&self, eps: f64) -> Settings {
        Settings {
            eps,
            delta: self.delta,
            grad_error: self.grad_error,
            noise: self.noise,
            seed: self.seed,
            iterations: self.iterations,
            early_stop: !self.no_early_stop,
            known_minimum: self.known_minimum,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(value_enum)]
    method: Method,
    /// Corpus id, or a path to a problem file (halving and triangle only)
    target: String,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    overrides: Overrides,
    /// Write the full JSON trace here
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write a gap-vs-iteration curve here
    #[arg(long)]
    tsv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct CompareArgs {
    function: String,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args, Clone)]
struct Overrides {
    /// Strong convexity of the objective; overrides the problem file
    #[arg(long)]
    mu: Option<f64>,
    /// Bound on l1 + l2 at the optimum; overrides the problem file
    #[arg(long)]
    dual_bound: Option<f64>,
}

#[derive(Args)]
struct DualArgs {
    problem: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, value_enum, default_value = "square")]
    domain: DomainArg,
    #[command(flatten)]
    overrides: Overrides,
    /// Write the full solution, with the outer trace, here
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Square,
    Triangle,
}

impl From<DomainArg> for DualDomain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Square => DualDomain::Square,
            DomainArg::Triangle => DualDomain::Triangle,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    function: String,
    /// Comma-separated eps values
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1e-1,1e-2,1e-3,1e-4,1e-5"
    )]
    eps: Vec<f64>,
    /// Comma-separated methods; defaults to all that apply
    #[arg(long, value_enum, value_delimiter = ',')]
    methods: Vec<Method>,
    #[command(flatten)]
    tuning: Tuning,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Dual(a) => cmd_dual(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::List => cmd_list(),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_NO_GUARANTEE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    method: &'a str,
    function: &'a str,
    eps: f64,
    point: Point2<f64>,
    value: f64,
    minimum: f64,
    final_gap: f64,
    final_region_best: f64,
    diverged: bool,
    iterations: u32,
    iterations_budget: u32,
    inner_delta: f64,
    stop_reason: StopReason,
    counters: CallCounters,
    wall_ms: f64,
}

impl<'a> From<&'a Run> for Report<'a> {
    fn from(r: &'a Run) -> Self {
        let t = &r.solution.trace;
        Report {
            method: r.method.name(),
            function: &r.function,
            eps: r.eps,
            point: r.solution.point,
            value: r.solution.value,
            minimum: r.minimum,
            final_gap: r.final_gap(),
            final_region_best: r.region_best,
            diverged: r.diverged(),
            iterations: t.iterations(),
            iterations_budget: t.iterations_budget,
            inner_delta: t.inner_delta,
            stop_reason: t.stop_reason,
            counters: t.counters,
            wall_ms: r.wall_ms,
        }
    }
}

fn warn_diverged(r: &Run) {
    eprintln!(
        "{} on {}: best value in the final region {} exceeds the minimum {} by more than eps = {}",
        r.method.name(),
        r.function,
        r.region_best,
        r.minimum,
        r.eps
    );
}

fn cmd_solve(a: SolveArgs) -> Result<bool> {
    if corpus::lookup::<f64>(&a.target).is_none() && Path::new(&a.target).is_file() {
        let domain = match a.method {
            Method::Halving => DomainArg::Square,
            Method::Triangle => DomainArg::Triangle,
            m => bail!(
                "problem files are solved through the dual; {} does not apply",
                m.name()
            ),
        };
        return cmd_dual(DualArgs {
            problem: a.target.into(),
            eps: a.run.eps,
            domain,
            overrides: a.overrides,
            trace: a.trace,
        });
    }
    let e = lookup(&a.target)?;
    let r = run::run(&e, a.method, &a.run.tuning.settings(a.run.eps))?;
    print_json(&Report::from(&r))?;
    if let Some(p) = &a.trace {
        write_json(p, &r.solution)?;
    }
    if let Some(p) = &a.tsv {
        write_curve(
            p,
            &r.solution.trace,
            e.oracle.as_ref(),
            e.minimum,
            r.final_gap(),
        )?;
    }
    if let Some(p) = &a.run.csv {
        append_rows(p, &[SummaryRow::from(&r)])?;
    }
    if r.diverged() {
        warn_diverged(&r);
    }
    Ok(!r.diverged())
}

fn cmd_compare(a: CompareArgs) -> Result<bool> {
    let e = lookup(&a.function)?;
    let s = a.run.tuning.settings(a.run.eps);
    let mut runs = Vec::new();
    for m in Method::ALL {
        if m.applies_to(&e) {
            runs.push(run::run(&e, m, &s)?);
        } else {
            eprintln!("skipping {}: `{}` is not smooth", m.name(), e.id);
        }
    }
    let rows: Vec<_> = runs.iter().map(SummaryRow::from).collect();
    match a.format {
        Format::Table => print_table(&rows),
        Format::Csv => write_rows(io::stdout().lock(), &rows, true)?,
        Format::Json => print_json(&runs.iter().map(Report::from).collect::<Vec<_>>())?,
    }
    if let Some(p) = &a.run.csv {
        append_rows(p, &rows)?;
    }
    let mut ok = true;
    for r in runs.iter().filter(|r| r.diverged()) {
        warn_diverged(r);
        ok = false;
    }
    Ok(ok)
}

fn print_table(rows: &[SummaryRow<'_>]) {
    println!(
        "{:<10} {:>10} {:>12} {:>15} {:>15} {:>10} {:>12}",
        "method",
        "iterations",
        "value_calls",
        "direction_calls",
        "full_grad_calls",
        "wall_ms",
        "final_gap"
    );
    for r in rows {
        println!(
            "{:<10} {:>10} {:>12} {:>15} {:>15} {:>10.3} {:>12.3e}",
            r.method,
            r.iterations,
            r.value_calls,
            r.direction_calls,
            r.full_grad_calls,
            r.wall_ms,
            r.final_gap
        );
    }
}

fn load_problem(path: &Path, o: &Overrides) -> Result<DualProblem> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut spec: ProblemSpec = serde_json::from_str(&text)
        .with_context(|| format!("malformed problem file {}", path.display()))?;
    if o.mu.is_some() {
        spec.mu = o.mu;
    }
    if o.dual_bound.is_some() {
        spec.dual_bound = o.dual_bound;
    }
    DualProblem::new(spec).with_context(|| format!("problem file {}", path.display()))
}

#[derive(Serialize)]
struct DualReport<'a> {
    x: &'a [f64],
    lambda: [f64; 2],
    value: f64,
    constraint_values: [f64; 2],
    certified: bool,
    residual: f64,
    dual_bound: f64,
    delta_fn: f64,
    inner_solves: u64,
    outer_iterations: u32,
    counters: CallCounters,
}

impl<'a> From<&'a DualSolution> for DualReport<'a> {
    fn from(s: &'a DualSolution) -> Self {
        DualReport {
            x: &s.x,
            lambda: s.lambda,
            value: s.value,
            constraint_values: s.constraint_values,
            certified: s.certified,
            residual: s.residual,
            dual_bound: s.plan.dual_bound,
            delta_fn: s.plan.delta_fn,
            inner_solves: s.inner_solves,
            outer_iterations: s.trace.as_ref().map_or(0, |t| t.iterations()),
            counters: s
                .trace
                .as_ref()
                .map_or_else(CallCounters::default, |t| t.counters),
        }
    }
}

fn cmd_dual(a: DualArgs) -> Result<bool> {
    let p = load_problem(&a.problem, &a.overrides)?;
    let s = dual_solve(&p, a.eps, a.domain.into())?;
    print_json(&DualReport::from(&s))?;
    if let Some(path) = &a.trace {
        write_json(path, &s)?;
    }
    if !s.certified {
        eprintln!(
            "certificate never held: best residual {} > eps = {}",
            s.residual, a.eps
        );
    }
    Ok(s.certified)
}

/// `HALVING_OPT_THREADS` caps the pool; unset or invalid means rayon's default.
fn sweep_threads() -> usize {
    std::env::var("HALVING_OPT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0)
}

fn cmd_sweep(a: SweepArgs) -> Result<bool> {
    let e = lookup(&a.function)?;
    let methods: Vec<Method> = if a.methods.is_empty() {
        Method::ALL
            .into_iter()
            .filter(|m| m.applies_to(&e))
            .collect()
    } else {
        a.methods.clone()
    };
    let cells: Vec<(Method, f64)> = methods
        .iter()
        .flat_map(|&m| a.eps.iter().map(move |&eps| (m, eps)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(sweep_threads())
        .build()?;
    let runs = pool.install(|| {
        cells
            .par_iter()
            .map(|&(m, eps)| run::run(&e, m, &a.tuning.settings(eps)))
            .collect::<Result<Vec<_>>>()
    })?;
    // cells finish in any order; rows go out in grid order through one writer
    let rows: Vec<_> = runs.iter().map(SummaryRow::from).collect();
    match &a.out {
        Some(p) => {
            let f =
                std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            write_rows(f, &rows, true)?;
        }
        None => write_rows(io::stdout().lock(), &rows, true)?,
    }
    let mut ok = true;
    for r in runs.iter().filter(|r| r.diverged()) {
        warn_diverged(r);
        ok = false;
    }
    Ok(ok)
}

fn cmd_list() -> Result<bool> {
    for e in corpus::corpus::<f64>() {
        let lo = e.domain.lo();
        let hi = e.domain.hi();
        println!(
            "{:<14} [{}, {}]x[{}, {}]  L = {}  M = {}  min = {}  {}",
            e.id,
            lo.x1,
            hi.x1,
            lo.x2,
            hi.x2,
            sci(e.oracle.lipschitz()),
            e.oracle.grad_lipschitz().map_or("none".into(), sci),
            sci(e.minimum),
            e.description
        );
    }
    Ok(true)
}
