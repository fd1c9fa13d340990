//! Batch command-line front-end: `gen`, `run`, `eval`, `trials`, `bench`
//! and `intervals`.
//!
//! Every command writes line-oriented output: graphs in the `spr-graph`
//! text format, minors as one JSON [`MinorRecord`] per line, tables as
//! tab-separated rows under a `#` header (or JSON lines with `--json`).
//! `SPR_THREADS` caps the worker pool used by `trials`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagnostics::{expected_distortion_with, interval_partition, C_INT};
use crate::error::{Result, SprError};
use crate::graph::io::{load_graph, write_graph};
use crate::instances::{bg_epsilon, log_regime_epsilon, InstanceSpec};
use crate::minor::distortion;
use crate::noisy_voronoi::FrontierPolicy;
use crate::record::{write_trace, MinorRecord};
use crate::runner::{Algorithm, RunOptions, Runner};
use crate::sampling::default_delta;

#[derive(Debug, Parser)]
#[command(name = "spr", version, about = "Steiner point removal experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance in spr-graph format.
    Gen(GenArgs),
    /// Run one algorithm once and print the minor record.
    Run(RunArgs),
    /// Recompute the distortion of a minor record against its graph.
    Eval(EvalArgs),
    /// Estimate expected distortion over a range of seeds.
    Trials(TrialsArgs),
    /// Time an algorithm over a ladder of random graphs.
    Bench(BenchArgs),
    /// Dump the interval partition of a terminal-pair shortest path.
    Intervals(IntervalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Caterpillar,
    BgLb,
    BinaryTree,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    /// Number of terminals (caterpillar, bg-lb, random).
    #[arg(long)]
    pub k: Option<usize>,
    /// Spine weight parameter, or `auto` for the family preset.
    #[arg(long, default_value = "auto")]
    pub eps: String,
    /// Constant `c` of the bg-lb preset `c / sqrt(ln k)`.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Tree depth (binary-tree).
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Smallest random edge weight.
    #[arg(long, default_value_t = 1.0)]
    pub wmin: f64,
    /// Largest random edge weight.
    #[arg(long, default_value_t = 10.0)]
    pub wmax: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Algorithm flags shared by `run` and `trials`.
#[derive(Debug, Args)]
pub struct AlgoArgs {
    #[arg(long, default_value = "fast")]
    pub algo: String,
    /// Geometric success probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Magnitude base offset; defaults to 1 / (20 ln k).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Ball-growing delta.
    #[arg(long)]
    pub ball_delta: Option<f64>,
    /// Pin the geometric draws, one per terminal: `g1,g2,...`.
    #[arg(long, value_delimiter = ',')]
    pub draws: Option<Vec<u32>>,
    /// Process terminals in a seeded random order.
    #[arg(long)]
    pub shuffle_terminals: bool,
    /// Grow reference clusters depth-first instead of breadth-first.
    #[arg(long)]
    pub lifo: bool,
}

impl AlgoArgs {
    fn algorithm(&self) -> Result<Algorithm> {
        self.algo.parse()
    }

    fn options(&self, record_trace: bool) -> RunOptions {
        let mut o = RunOptions {
            p: self.p,
            delta: self.delta,
            draws: self.draws.clone(),
            shuffle_terminals: self.shuffle_terminals,
            frontier: if self.lifo { FrontierPolicy::Lifo } else { FrontierPolicy::Fifo },
            record_trace,
            ..RunOptions::default()
        };
        if let Some(d) = self.ball_delta {
            o.ball_delta = d;
        }
        o
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write per-round trace records (JSON lines) to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub graph: PathBuf,
    pub minor: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrialsArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// First seed; trials use `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON lines instead of a table.
    #[arg(long)]
    pub json: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge counts; each instance has `n = m / 4` and `k = round(sqrt(n))`.
    #[arg(long, value_delimiter = ',', default_value = "10000,20000,40000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value = "fast")]
    pub algo: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Timed repetitions per size; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IntervalArgs {
    pub graph: PathBuf,
    /// Terminal indices of the pair: `i,j`.
    #[arg(long, value_delimiter = ',', num_args = 1, default_value = "0,1")]
    pub pair: Vec<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = C_INT)]
    pub c_int: f64,
    #[arg(long)]
    pub json: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match configure_threads().and_then(|()| execute(cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("spr: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("SPR_THREADS") else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| SprError::InvalidParameter(format!("SPR_THREADS = {value:?}")))?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Trials(a) => cmd_trials(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Intervals(a) => cmd_intervals(&a),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn required<T>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| SprError::InvalidParameter(format!("{family} needs --{flag}")))
}

fn parse_eps(text: &str, auto: impl FnOnce() -> Result<f64>) -> Result<f64> {
    if text == "auto" {
        return auto();
    }
    text.parse()
        .map_err(|_| SprError::InvalidParameter(format!("--eps expects a number or `auto`, got {text:?}")))
}

/// The instance a `gen` invocation describes.
pub fn instance_spec(a: &GenArgs) -> Result<InstanceSpec> {
    Ok(match a.family {
        Family::Caterpillar => {
            let k = required(a.k, "k", "caterpillar")?;
            InstanceSpec::Caterpillar { k, epsilon: parse_eps(&a.eps, || log_regime_epsilon(k))? }
        }
        Family::BgLb => {
            let k = required(a.k, "k", "bg-lb")?;
            InstanceSpec::BgLowerBound { k, epsilon: parse_eps(&a.eps, || bg_epsilon(k, a.c))? }
        }
        Family::BinaryTree => InstanceSpec::BinaryTree { depth: required(a.depth, "depth", "binary-tree")? },
        Family::Random => InstanceSpec::Random {
            n: required(a.n, "n", "random")?,
            m: required(a.m, "m", "random")?,
            k: required(a.k, "k", "random")?,
            seed: a.seed,
            weight_range: (a.wmin, a.wmax),
        },
    })
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let instance = instance_spec(a)?;
    let g = instance.build()?;
    let mut out = open_output(&a.output)?;
    writeln!(out, "# {} {:?}", instance.family(), instance)?;
    write_graph(&g, &mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_run(a: &RunArgs) -> Result<()> {
    let algorithm = a.algo.algorithm()?;
    let g = load_graph(&a.graph)?;
    let runner = Runner::new(&g);
    let outcome = runner.run(algorithm, a.seed, &a.algo.options(a.trace.is_some()))?;
    let (worst, _) = runner.worst_distortion(&outcome.minor)?;
    if let Some(path) = &a.trace {
        let mut t = BufWriter::new(File::create(path)?);
        write_trace(&outcome, &mut t)?;
        t.flush()?;
    }
    let mut out = open_output(&a.output)?;
    writeln!(out, "{}", MinorRecord::new(&outcome, worst).to_json())?;
    out.flush()?;
    Ok(())
}

fn cmd_eval(a: &EvalArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let record = MinorRecord::read(BufReader::new(File::open(&a.minor)?))?;
    if record.terminals != g.terminals() {
        return Err(SprError::PreconditionViolated("minor terminals differ from the graph's".into()));
    }
    let report = distortion(&g, &record.to_minor())?;
    let line = json!({
        "algorithm": record.algorithm,
        "seed": record.seed,
        "distortion_worst": report.worst,
        "argmax_pair": [report.argmax_pair.0, report.argmax_pair.1],
        "min_ratio": report.min_ratio(),
        "recorded": record.distortion_worst,
        "matches": report.worst == record.distortion_worst,
    });
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")?;
    Ok(())
}

fn cmd_trials(a: &TrialsArgs) -> Result<()> {
    let algorithm = a.algo.algorithm()?;
    let g = load_graph(&a.graph)?;
    let runner = Runner::new(&g);
    let est = expected_distortion_with(&runner, algorithm, a.trials, a.seed, &a.algo.options(false))?;
    let k = est.k;
    let mut out = open_output(&a.output)?;
    if a.json {
        let summary = json!({
            "record": "summary",
            "algorithm": algorithm,
            "k": k,
            "trials": est.trials,
            "seed": a.seed,
            "max_of_means": est.max_of_means,
            "argmax_pair": [est.argmax_pair.0, est.argmax_pair.1],
            "argmax_stderr": est.argmax_stderr,
            "mean_worst": est.mean_worst,
            "mean_worst_stderr": est.mean_worst_stderr,
        });
        writeln!(out, "{summary}")?;
    } else {
        writeln!(
            out,
            "# algorithm={algorithm} k={k} trials={} seed={} max_of_means={} argmax_pair={},{} mean_worst={} mean_worst_stderr={}",
            est.trials, a.seed, est.max_of_means, est.argmax_pair.0, est.argmax_pair.1, est.mean_worst, est.mean_worst_stderr
        )?;
        writeln!(out, "i\tj\tmean\tstderr\tmin\tmax")?;
    }
    for i in 0..k {
        for j in i + 1..k {
            let idx = i * k + j;
            if a.json {
                let row = json!({
                    "record": "pair", "i": i, "j": j,
                    "mean": est.mean[idx], "stderr": est.stderr[idx],
                    "min": est.min[idx], "max": est.max[idx],
                });
                writeln!(out, "{row}")?;
            } else {
                writeln!(out, "{i}\t{j}\t{}\t{}\t{}\t{}", est.mean[idx], est.stderr[idx], est.min[idx], est.max[idx])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// One rung of the benchmark ladder.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// Fastest wall time over the repetitions, including distance setup.
    pub seconds: f64,
    /// Time relative to the previous rung.
    pub ratio: Option<f64>,
    pub insertions: Option<u64>,
    pub decrease_keys: Option<u64>,
    pub extractions: Option<u64>,
    /// `min(2m, nk)`, the bound on total extractions.
    pub extraction_bound: u64,
}

/// Runs `algorithm` on `gen_random(m / 4, m, round(sqrt(m / 4)))` for each
/// size, keeping the fastest of `repeats` runs. Repetitions cycle through
/// the sizes so that a burst of background load does not land on one size.
pub fn bench_ladder(sizes: &[usize], algorithm: Algorithm, seed: u64, repeats: usize) -> Result<Vec<BenchRow>> {
    let graphs = sizes
        .iter()
        .map(|&m| {
            let n = m / 4;
            let k = ((n as f64).sqrt().round() as usize).max(2);
            InstanceSpec::Random { n, m, k, seed, weight_range: (1.0, 10.0) }.build()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = vec![f64::INFINITY; sizes.len()];
    let mut counters = vec![None; sizes.len()];
    for _ in 0..repeats.max(1) {
        for (idx, g) in graphs.iter().enumerate() {
            let start = Instant::now();
            let runner = Runner::new(g);
            let out = runner.run(algorithm, seed, &RunOptions::default())?;
            best[idx] = best[idx].min(start.elapsed().as_secs_f64());
            counters[idx] = out.counters;
        }
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for (idx, g) in graphs.iter().enumerate() {
        let (m, n, k) = (g.edge_count(), g.vertex_count(), g.terminal_count());
        let c = counters[idx];
        rows.push(BenchRow {
            m,
            n,
            k,
            seconds: best[idx],
            ratio: rows.last().map(|prev| best[idx] / prev.seconds),
            insertions: c.map(|c| c.insertions),
            decrease_keys: c.map(|c| c.decrease_keys),
            extractions: c.map(|c| c.extractions),
            extraction_bound: (2 * m).min(n * k) as u64,
        });
    }
    Ok(rows)
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    let algorithm: Algorithm = a.algo.parse()?;
    let rows = bench_ladder(&a.sizes, algorithm, a.seed, a.repeats)?;
    let mut out = open_output(&a.output)?;
    if !a.json {
        writeln!(out, "# algorithm={algorithm} seed={} repeats={}", a.seed, a.repeats)?;
        writeln!(out, "m\tn\tk\tseconds\tratio\tinsertions\tdecrease_keys\textractions\textraction_bound")?;
    }
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    for r in &rows {
        if a.json {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        } else {
            writeln!(
                out,
                "{}\t{}\t{}\t{:.6}\t{}\t{}\t{}\t{}\t{}",
                r.m,
                r.n,
                r.k,
                r.seconds,
                r.ratio.map_or("-".to_string(), |x| format!("{x:.3}")),
                opt(r.insertions),
                opt(r.decrease_keys),
                opt(r.extractions),
                r.extraction_bound
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_intervals(a: &IntervalArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let k = g.terminal_count();
    let &[i, j] = a.pair.as_slice() else {
        return Err(SprError::InvalidParameter("--pair expects two terminal indices".into()));
    };
    if i >= k || j >= k {
        return Err(SprError::InvalidParameter(format!("terminal index out of range for k = {k}")));
    }
    let delta = match a.delta {
        Some(d) => d,
        None => default_delta(k)?,
    };
    let part = interval_partition(&g, g.terminal(i), g.terminal(j), a.c_int, delta)?;
    let mut out = open_output(&a.output)?;
    if a.json {
        for q in &part.intervals {
            writeln!(out, "{}", serde_json::to_string(q)?)?;
        }
        for w in &part.warnings {
            writeln!(out, "{}", json!({ "warning": w }))?;
        }
    } else {
        writeln!(
            out,
            "# length={} external_total={} c_int={} delta={} bounds_ok={}",
            part.length(),
            part.external_total(),
            part.c_int,
            part.delta,
            part.satisfies_bounds()
        )?;
        writeln!(out, "start\tend\tL\tL_plus\tD")?;
        for q in &part.intervals {
            writeln!(out, "{}\t{}\t{}\t{}\t{}", q.start, q.end, q.internal_length, q.external_length, q.distance)?;
        }
        for w in &part.warnings {
            writeln!(out, "# warning: {w:?}")?;
        }
    }
    out.flush()?;
    Ok(())
}
