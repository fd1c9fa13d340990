//! Uniform entry point over the four clustering algorithms, with distance
//! caches shared across seeds on one graph.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::ball_growing::{
    ball_growing_with, normalize_instance, BallGrowingConfig, BallStep, DEFAULT_BALL_DELTA,
};
use crate::error::{Result, SprError};
use crate::fast::{fast_noisy_voronoi_with, FastConfig};
use crate::graph::{DistanceOracle, TerminalMetric, WeightedGraph};
use crate::heap::HeapCounters;
use crate::minor::{induce_global_minor, worst_distortion, InducedMinor};
use crate::noisy_voronoi::{noisy_voronoi_with, plain_voronoi, FrontierPolicy, RoundTrace, RunConfig};
use crate::partition::TerminalPartition;
use crate::sampling::RandomPlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Reference noisy Voronoi, global minor weights.
    Noisy,
    /// Heap-based noisy Voronoi, single-crossing minor weights.
    Fast,
    /// Exponential ball growing, global minor weights.
    Ball,
    /// Plain Voronoi cells, global minor weights.
    Voronoi,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Noisy, Algorithm::Fast, Algorithm::Ball, Algorithm::Voronoi];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Noisy => "noisy",
            Algorithm::Fast => "fast",
            Algorithm::Ball => "ball",
            Algorithm::Voronoi => "voronoi",
        }
    }

    pub fn is_randomized(self) -> bool {
        self != Algorithm::Voronoi
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = SprError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| SprError::UnknownAlgorithm(s.to_string()))
    }
}

/// Knobs shared by every algorithm; each uses the ones that apply to it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub p: Option<f64>,
    pub delta: Option<f64>,
    pub draws: Option<Vec<u32>>,
    pub shuffle_terminals: bool,
    pub frontier: FrontierPolicy,
    pub ball_delta: f64,
    pub record_trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            p: None,
            delta: None,
            draws: None,
            shuffle_terminals: false,
            frontier: FrontierPolicy::Fifo,
            ball_delta: DEFAULT_BALL_DELTA,
            record_trace: false,
        }
    }
}

impl RunOptions {
    /// The random plan for `seed` on `k` terminals.
    pub fn plan(&self, k: usize, seed: u64) -> Result<RandomPlan> {
        let mut plan = RandomPlan::new(k, seed)?;
        if let Some(p) = self.p {
            plan = plan.with_p(p)?;
        }
        if let Some(d) = self.delta {
            plan = plan.with_delta(d)?;
        }
        if let Some(draws) = &self.draws {
            plan = plan.with_draws(draws.clone())?;
        }
        Ok(plan)
    }
}

#[derive(Debug, Clone)]
pub enum RunTrace {
    Rounds(Vec<RoundTrace>),
    Steps(Vec<BallStep>),
    Empty,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub partition: TerminalPartition,
    pub minor: InducedMinor,
    pub trace: RunTrace,
    /// Heap counters of the fast algorithm.
    pub counters: Option<HeapCounters>,
    /// Extraction-key order violations of the fast algorithm.
    pub monotonicity_violations: usize,
}

/// Runs algorithms on one graph, caching `D(·)`, per-terminal distances,
/// the terminal metric and the normalized copy used by ball growing.
pub struct Runner<'g> {
    graph: &'g WeightedGraph,
    oracle: DistanceOracle<'g>,
    metric: OnceLock<TerminalMetric>,
    normalized: OnceLock<Option<WeightedGraph>>,
}

impl<'g> Runner<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        Runner {
            graph,
            oracle: DistanceOracle::new(graph),
            metric: OnceLock::new(),
            normalized: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn oracle(&self) -> &DistanceOracle<'g> {
        &self.oracle
    }

    pub fn metric(&self) -> &TerminalMetric {
        self.metric.get_or_init(|| TerminalMetric::compute(self.graph))
    }

    fn normalized(&self) -> &WeightedGraph {
        self.normalized
            .get_or_init(|| match normalize_instance(self.graph) {
                Ok((h, scale)) if scale != 1.0 => Some(h),
                _ => None,
            })
            .as_ref()
            .unwrap_or(self.graph)
    }

    pub fn run(&self, algorithm: Algorithm, seed: u64, options: &RunOptions) -> Result<RunOutcome> {
        let g = self.graph;
        let k = g.terminal_count();
        let plan = || if k >= 2 { options.plan(k, seed) } else { Ok(single_plan(seed)) };
        let mut counters = None;
        let mut violations = 0;
        let (partition, minor, trace) = match algorithm {
            Algorithm::Noisy => {
                let config = RunConfig { frontier: options.frontier, shuffle_terminals: options.shuffle_terminals };
                let out = noisy_voronoi_with(&self.oracle, &plan()?, config)?;
                (out.partition, out.minor, RunTrace::Rounds(out.trace))
            }
            Algorithm::Fast => {
                let config = FastConfig { shuffle_terminals: options.shuffle_terminals, record_extractions: false };
                let out = fast_noisy_voronoi_with(&self.oracle, &plan()?, config)?;
                counters = Some(out.counters);
                violations = out.monotonicity_violations;
                (out.partition, out.minor, RunTrace::Rounds(out.trace))
            }
            Algorithm::Ball => {
                let mut config = BallGrowingConfig::new(seed);
                config.delta = options.ball_delta;
                config.record_trace = options.record_trace;
                let out = ball_growing_with(self.normalized(), &config, self.metric())?;
                (out.partition, out.minor, RunTrace::Steps(out.trace))
            }
            Algorithm::Voronoi => {
                let p = plain_voronoi(g);
                let m = induce_global_minor(g, &p, self.metric());
                (p, m, RunTrace::Empty)
            }
        };
        Ok(RunOutcome {
            algorithm,
            seed,
            partition,
            minor,
            trace,
            counters,
            monotonicity_violations: violations,
        })
    }

    /// Worst ratio `d_M / d_G` of a minor on this graph, and its pair.
    pub fn worst_distortion(&self, minor: &InducedMinor) -> Result<(f64, (usize, usize))> {
        worst_distortion(self.metric(), minor)
    }
}

/// Placeholder plan for the single-terminal case, where nothing is sampled.
fn single_plan(seed: u64) -> RandomPlan {
    RandomPlan { seed, p: crate::sampling::DEFAULT_P, delta: 1.0, draws: None }
}
