//! Multi-round exponential ball growing.
//!
//! With `delta = 1/20`, `r = 1 + delta / ln k` and `D = delta / ln k`, round
//! `ℓ` visits every terminal once: `t_j` draws `q ~ Exp(D r^ℓ)`, sets
//! `R_j += q`, and claims the ball of radius `R_j` around `t_j` in the graph
//! induced by the unclustered vertices and its own cluster. Rounds continue
//! until every vertex is clustered. Draws are made for every terminal in
//! every round, whether or not anything is left for it to claim.
//!
//! The radii assume a normalized instance, one whose closest
//! terminal/Steiner pair is at distance 1; see [`normalize_instance`].

use serde::Serialize;

use crate::error::{Result, SprError};
use crate::graph::shortest_path::BoundedSearch;
use crate::graph::{dijkstra, DistanceOracle, WeightedGraph};
use crate::minor::{induce_global_minor, InducedMinor, TerminalDistances, WeightMode};
use crate::noisy_voronoi::{finish_assignment, single_cluster};
use crate::partition::TerminalPartition;
use crate::sampling::{exponential_from_uniform, TerminalStream};

pub const DEFAULT_BALL_DELTA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct BallGrowingConfig {
    pub delta: f64,
    pub seed: u64,
    /// Pinned increments: `pinned_draws[ℓ][j]` replaces the draw of `t_j` in
    /// round `ℓ`. Rounds past the end are sampled.
    pub pinned_draws: Vec<Vec<f64>>,
    /// Keep one record per (round, terminal) step.
    pub record_trace: bool,
    /// Overrides the default round guard.
    pub max_rounds: Option<usize>,
}

impl BallGrowingConfig {
    pub fn new(seed: u64) -> Self {
        BallGrowingConfig {
            delta: DEFAULT_BALL_DELTA,
            seed,
            pinned_draws: Vec::new(),
            record_trace: false,
            max_rounds: None,
        }
    }

    /// `r = 1 + delta / ln k`.
    pub fn growth(&self, k: usize) -> f64 {
        1.0 + self.base(k)
    }

    /// `D = delta / ln k`.
    pub fn base(&self, k: usize) -> f64 {
        self.delta / (k as f64).ln()
    }

    fn validate(&self, k: usize) -> Result<()> {
        if k < 2 {
            return Err(SprError::FewerThanTwoTerminals(k));
        }
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(SprError::InvalidParameter(format!("delta = {}", self.delta)));
        }
        if let Some(row) = self.pinned_draws.iter().find(|row| row.len() != k) {
            return Err(SprError::InvalidParameter(format!(
                "pinned round has {} draws for {k} terminals",
                row.len()
            )));
        }
        if self.pinned_draws.iter().flatten().any(|&q| !(q >= 0.0)) {
            return Err(SprError::InvalidParameter("pinned draws must be non-negative".into()));
        }
        Ok(())
    }
}

/// One (round, terminal) step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallStep {
    pub round: usize,
    pub terminal: usize,
    pub draw: f64,
    pub radius: f64,
    pub claimed: usize,
}

#[derive(Debug, Clone)]
pub struct BallGrowingOutcome {
    pub partition: TerminalPartition,
    pub minor: InducedMinor,
    /// Rounds executed.
    pub rounds: usize,
    pub final_radii: Vec<f64>,
    /// Empty unless `record_trace` was set.
    pub trace: Vec<BallStep>,
}

/// Scales `g` so that the closest terminal/Steiner pair is at distance 1.
/// Returns the scaled graph and the factor applied.
pub fn normalize_instance(g: &WeightedGraph) -> Result<(WeightedGraph, f64)> {
    let nearest = DistanceOracle::new(g);
    let nearest = nearest.nearest_terminal();
    let closest = g
        .steiner_vertices()
        .map(|v| nearest.get(v))
        .fold(f64::INFINITY, f64::min);
    if !closest.is_finite() {
        return Err(SprError::NoSteinerVertices);
    }
    let scale = 1.0 / closest;
    if scale == 1.0 {
        return Ok((g.clone(), 1.0));
    }
    Ok((g.scaled(scale)?, scale))
}

/// `10 ceil(log_r diam) + 100`, with the diameter bounded above by twice the
/// eccentricity of `t_1`.
pub fn round_guard(g: &WeightedGraph, r: f64) -> usize {
    let ecc = dijkstra(g, g.terminal(0))
        .as_slice()
        .iter()
        .copied()
        .fold(0.0, f64::max);
    let diameter = 2.0 * ecc;
    let log = if diameter > 1.0 { (diameter.ln() / r.ln()).ceil() } else { 0.0 };
    10 * (log as usize) + 100
}

pub fn ball_growing(g: &WeightedGraph, config: &BallGrowingConfig) -> Result<BallGrowingOutcome> {
    ball_growing_with(g, config, &DistanceOracle::new(g))
}

/// Runs on an instance assumed to be normalized already, reading the minor
/// weights `d_G(t_i, t_j)` from `distances`.
pub fn ball_growing_with(
    g: &WeightedGraph,
    config: &BallGrowingConfig,
    distances: &impl TerminalDistances,
) -> Result<BallGrowingOutcome> {
    let n = g.vertex_count();
    let k = g.terminal_count();
    if k == 1 {
        let (partition, minor) = single_cluster(g, WeightMode::Global);
        return Ok(BallGrowingOutcome { partition, minor, rounds: 0, final_radii: vec![0.0], trace: Vec::new() });
    }
    config.validate(k)?;
    let r = config.growth(k);
    let base = config.base(k);
    let guard = config.max_rounds.unwrap_or_else(|| round_guard(g, r));

    let mut assignment: Vec<Option<usize>> = (0..n).map(|v| g.terminal_index(v)).collect();
    let mut unclustered = n - k;
    let mut radii = vec![0.0; k];
    let mut streams: Vec<TerminalStream> =
        (0..k).map(|j| TerminalStream::new(config.seed, j as u64)).collect();
    let mut search = BoundedSearch::new(n);
    let mut ball = Vec::new();
    let mut trace = Vec::new();
    let mut rounds = 0;
    let mut mean = base;

    while unclustered > 0 {
        if rounds == guard {
            return Err(SprError::NonTermination { rounds, unclustered });
        }
        for j in 0..k {
            let u = streams[j].uniform();
            let q = match config.pinned_draws.get(rounds) {
                Some(row) => row[j],
                None => exponential_from_uniform(mean, u)?,
            };
            radii[j] += q;
            ball.clear();
            search.run(
                g,
                g.terminal(j),
                radii[j],
                |v| assignment[v].map_or(true, |c| c == j),
                |v, _| ball.push(v),
            );
            let mut claimed = 0;
            for &v in &ball {
                if assignment[v].is_none() {
                    assignment[v] = Some(j);
                    claimed += 1;
                }
            }
            unclustered -= claimed;
            if config.record_trace {
                trace.push(BallStep { round: rounds, terminal: j, draw: q, radius: radii[j], claimed });
            }
        }
        rounds += 1;
        mean *= r;
    }
    let partition = finish_assignment(k, assignment)?;
    let minor = induce_global_minor(g, &partition, distances);
    Ok(BallGrowingOutcome { partition, minor, rounds, final_radii: radii, trace })
}

/// Normalizes when the graph has Steiner vertices, runs, and returns the
/// partition on the original vertex ids with minor weights taken from the
/// original graph.
pub fn ball_growing_normalized(
    g: &WeightedGraph,
    config: &BallGrowingConfig,
) -> Result<BallGrowingOutcome> {
    match normalize_instance(g) {
        Ok((scaled, scale)) if scale != 1.0 => {
            let mut out = ball_growing_with(&scaled, config, &DistanceOracle::new(g))?;
            for r in &mut out.final_radii {
                *r /= scale;
            }
            Ok(out)
        }
        Ok(_) | Err(SprError::NoSteinerVertices) => ball_growing(g, config),
        Err(e) => Err(e),
    }
}
