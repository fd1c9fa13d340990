//! Analysis instruments: the greedy interval partition of a terminal-pair
//! shortest path, and Monte-Carlo estimates of expected distortion.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, SprError};
use crate::graph::{min_terminal_pair_distance, shortest_path, terminal_distances, DistanceMap};
use crate::graph::{VertexId, WeightedGraph};
use crate::minor::distortion_with_metric;
use crate::runner::{Algorithm, RunOptions, Runner};

/// Default interval constant `c_int`.
pub const C_INT: f64 = 1.0 / 6.0;

/// Subdivision constant `c_w` as a function of `delta`.
pub fn subdivision_constant(delta: f64) -> f64 {
    delta / 24.0
}

/// Consecutive path vertices `path[start..=end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    /// `L(Q)`: path distance from the first to the last vertex.
    pub internal_length: f64,
    /// `L⁺(Q)`: path distance from the predecessor to the successor, where
    /// the endpoints of the path are their own predecessor and successor.
    pub external_length: f64,
    /// `D(Q)`: nearest-terminal distance of the first vertex.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntervalWarning {
    /// A terminal other than the endpoints lies on the path. Its nearest
    /// terminal distance is 0, so it forms a singleton interval and the
    /// sweep restarts after it, which partitions each terminal-free
    /// segment on its own.
    IntermediateTerminal { vertex: VertexId, position: usize },
    /// A path edge is heavier than `c_w · Δ̂`, the bound assumed when the
    /// partition is used in the analysis.
    HeavyEdge { u: VertexId, v: VertexId, w: f64, limit: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalPartition {
    pub path: Vec<VertexId>,
    /// Cumulative path distance of each vertex from the first.
    pub positions: Vec<f64>,
    pub intervals: Vec<Interval>,
    pub c_int: f64,
    pub delta: f64,
    pub warnings: Vec<IntervalWarning>,
}

impl IntervalPartition {
    /// `Δ`, the length of the path.
    pub fn length(&self) -> f64 {
        *self.positions.last().unwrap_or(&0.0)
    }

    pub fn external_total(&self) -> f64 {
        self.intervals.iter().map(|q| q.external_length).sum()
    }

    /// Whether `Δ <= Σ L⁺(Q) <= 2Δ` up to `rel_tol`. Each path edge is
    /// counted once or twice, so with all singletons the upper end is met
    /// with equality and floating-point summation can exceed it by an ulp.
    pub fn external_total_in_range(&self, rel_tol: f64) -> bool {
        let (total, len) = (self.external_total(), self.length());
        total >= len * (1.0 - rel_tol) && total <= 2.0 * len * (1.0 + rel_tol)
    }

    /// Whether `L(Q) <= c_int δ D(Q) <= L⁺(Q)` holds for every interval.
    pub fn satisfies_bounds(&self) -> bool {
        self.intervals.iter().all(|q| {
            let target = self.c_int * self.delta * q.distance;
            q.internal_length <= target && target <= q.external_length
        })
    }

    /// Intervals are consecutive and cover the whole path.
    pub fn is_cover(&self) -> bool {
        let mut next = 0;
        for q in &self.intervals {
            if q.start != next || q.end < q.start {
                return false;
            }
            next = q.end + 1;
        }
        next == self.path.len()
    }
}

/// Greedy partition of the deterministic shortest `t`–`t'` path, computing
/// `D(·)` and `Δ̂` on the way.
pub fn interval_partition(
    g: &WeightedGraph,
    t: VertexId,
    t_prime: VertexId,
    c_int: f64,
    delta: f64,
) -> Result<IntervalPartition> {
    let nearest = terminal_distances(g);
    let min_pair = min_terminal_pair_distance(g)?;
    interval_partition_with(g, &nearest, min_pair, t, t_prime, c_int, delta)
}

/// As [`interval_partition`] with `D(·)` and `Δ̂` supplied.
pub fn interval_partition_with(
    g: &WeightedGraph,
    nearest: &DistanceMap,
    min_pair: f64,
    t: VertexId,
    t_prime: VertexId,
    c_int: f64,
    delta: f64,
) -> Result<IntervalPartition> {
    for v in [t, t_prime] {
        if v >= g.vertex_count() || !g.is_terminal(v) {
            return Err(SprError::InvalidParameter(format!("vertex {v} is not a terminal")));
        }
    }
    if t == t_prime {
        return Err(SprError::InvalidParameter("endpoints must differ".into()));
    }
    if !(c_int > 0.0) || !(delta > 0.0) {
        return Err(SprError::InvalidParameter(format!("c_int = {c_int}, delta = {delta}")));
    }
    let path = shortest_path(g, t, t_prime);
    let last = path.len() - 1;
    let mut positions = Vec::with_capacity(path.len());
    let mut warnings = Vec::new();
    let limit = subdivision_constant(delta) * min_pair;
    positions.push(0.0);
    for (i, pair) in path.windows(2).enumerate() {
        let w = g.edge_weight(pair[0], pair[1]).expect("path edges exist");
        positions.push(positions[i] + w);
        if w > limit {
            warnings.push(IntervalWarning::HeavyEdge { u: pair[0], v: pair[1], w, limit });
        }
    }
    for (position, &v) in path.iter().enumerate().take(last).skip(1) {
        if g.is_terminal(v) {
            warnings.push(IntervalWarning::IntermediateTerminal { vertex: v, position });
        }
    }

    let pos = |i: isize| positions[i.clamp(0, last as isize) as usize];
    let external = |a: usize, b: usize| pos(b as isize + 1) - pos(a as isize - 1);
    let mut intervals = Vec::new();
    let mut h = 0;
    while h <= last {
        let target = c_int * delta * nearest.get(path[h]);
        let mut end = h;
        while end < last && external(h, end) < target {
            end += 1;
        }
        intervals.push(Interval {
            start: h,
            end,
            internal_length: positions[end] - positions[h],
            external_length: external(h, end),
            distance: nearest.get(path[h]),
        });
        h = end + 1;
    }
    Ok(IntervalPartition { path, positions, intervals, c_int, delta, warnings })
}

/// Running mean and variance, exact for constant input.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

/// Mean ratios over seeds `seed..seed + trials`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedDistortionEstimate {
    pub k: usize,
    pub trials: usize,
    /// Row-major `k x k` mean ratios; the diagonal is 1.
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    /// Largest per-pair mean, the expected distortion of the distribution.
    pub max_of_means: f64,
    pub argmax_pair: (usize, usize),
    pub argmax_stderr: f64,
    /// Mean over trials of each trial's worst ratio.
    pub mean_worst: f64,
    pub mean_worst_stderr: f64,
}

impl ExpectedDistortionEstimate {
    pub fn mean_ratio(&self, i: usize, j: usize) -> f64 {
        self.mean[i * self.k + j]
    }
}

/// Seeds are processed in parallel batches and folded in seed order, so the
/// result does not depend on thread scheduling.
fn batch_size() -> usize {
    2 * rayon::current_num_threads().max(1)
}

pub fn expected_distortion(
    g: &WeightedGraph,
    algorithm: Algorithm,
    trials: usize,
    seed: u64,
    options: &RunOptions,
) -> Result<ExpectedDistortionEstimate> {
    expected_distortion_with(&Runner::new(g), algorithm, trials, seed, options)
}

pub fn expected_distortion_with(
    runner: &Runner<'_>,
    algorithm: Algorithm,
    trials: usize,
    seed: u64,
    options: &RunOptions,
) -> Result<ExpectedDistortionEstimate> {
    if trials == 0 {
        return Err(SprError::InvalidParameter("trials must be at least 1".into()));
    }
    let k = runner.graph().terminal_count();
    let metric = runner.metric();
    let mut pairs = vec![Welford::default(); k * k];
    let mut min = vec![f64::INFINITY; k * k];
    let mut max = vec![f64::NEG_INFINITY; k * k];
    let mut worst = Welford::default();
    let seeds: Vec<u64> = (0..trials as u64).map(|i| seed.wrapping_add(i)).collect();
    for batch in seeds.chunks(batch_size()) {
        let reports = batch
            .par_iter()
            .map(|&s| {
                let out = runner.run(algorithm, s, options)?;
                distortion_with_metric(metric, &out.minor)
            })
            .collect::<Result<Vec<_>>>()?;
        for r in reports {
            worst.push(r.worst);
            for (idx, &x) in r.per_pair.iter().enumerate() {
                pairs[idx].push(x);
                min[idx] = min[idx].min(x);
                max[idx] = max[idx].max(x);
            }
        }
    }
    let mean: Vec<f64> = pairs.iter().map(|w| w.mean).collect();
    let stderr: Vec<f64> = pairs.iter().map(Welford::stderr).collect();
    let mut best = (if k < 2 { 1.0 } else { f64::NEG_INFINITY }, (0, 0));
    for i in 0..k {
        for j in i + 1..k {
            if mean[i * k + j] > best.0 {
                best = (mean[i * k + j], (i, j));
            }
        }
    }
    let (i, j) = best.1;
    Ok(ExpectedDistortionEstimate {
        k,
        trials,
        argmax_stderr: if k < 2 { 0.0 } else { stderr[i * k + j] },
        mean,
        stderr,
        min,
        max,
        max_of_means: best.0,
        argmax_pair: best.1,
        mean_worst: worst.mean,
        mean_worst_stderr: worst.stderr(),
    })
}

/// Per-trial worst distortion, without the per-pair matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstDistortionSummary {
    pub trials: usize,
    pub mean: f64,
    pub stderr: f64,
    pub min: f64,
    pub max: f64,
    /// Worst ratio of each trial, in seed order.
    pub values: Vec<f64>,
}

pub fn worst_distortion_trials(
    runner: &Runner<'_>,
    algorithm: Algorithm,
    trials: usize,
    seed: u64,
    options: &RunOptions,
) -> Result<WorstDistortionSummary> {
    if trials == 0 {
        return Err(SprError::InvalidParameter("trials must be at least 1".into()));
    }
    let seeds: Vec<u64> = (0..trials as u64).map(|i| seed.wrapping_add(i)).collect();
    let mut values = Vec::with_capacity(trials);
    for batch in seeds.chunks(batch_size()) {
        let part = batch
            .par_iter()
            .map(|&s| {
                let out = runner.run(algorithm, s, options)?;
                Ok(runner.worst_distortion(&out.minor)?.0)
            })
            .collect::<Result<Vec<f64>>>()?;
        values.extend(part);
    }
    let mut w = Welford::default();
    values.iter().for_each(|&x| w.push(x));
    Ok(WorstDistortionSummary {
        trials,
        mean: w.mean,
        stderr: w.stderr(),
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::instances::{gen_caterpillar, gen_random};
    use crate::minor::distortion;

    #[test]
    fn caterpillar_intervals() {
        let k = 12;
        let delta = crate::sampling::default_delta(k).unwrap();
        let g = gen_caterpillar(k, 1e-3).unwrap();
        let ip = interval_partition(&g, 0, k - 1, C_INT, delta).unwrap();
        assert!(ip.is_cover());
        assert!(ip.satisfies_bounds());
        assert!(ip.external_total_in_range(1e-12));
        // t, v_1, ..., v_k, t'
        assert_eq!(ip.path.len(), k + 2);
        for q in &ip.intervals[1..ip.intervals.len() - 1] {
            assert_eq!(q.distance, 1.0);
            assert!(q.internal_length <= C_INT * delta);
        }
        assert!(ip.warnings.iter().all(|w| matches!(w, IntervalWarning::HeavyEdge { .. })));
    }

    #[test]
    fn singleton_at_a_terminal() {
        let g = build_graph([(0, 1, 1.0), (1, 2, 1.0)], vec![0, 2]).unwrap();
        let ip = interval_partition(&g, 0, 2, C_INT, 0.1).unwrap();
        assert_eq!(ip.intervals[0].start, 0);
        assert_eq!(ip.intervals[0].end, 0);
        assert_eq!(ip.intervals[0].internal_length, 0.0);
        assert!(ip.satisfies_bounds());
    }

    #[test]
    fn intermediate_terminals_are_reported() {
        // 0 - 1 - 2 - 3 - 4 with terminals 0, 2, 4
        let g = build_graph((0..4).map(|i| (i, i + 1, 1.0)), vec![0, 2, 4]).unwrap();
        let ip = interval_partition(&g, 0, 4, C_INT, 0.2).unwrap();
        assert!(ip.warnings.contains(&IntervalWarning::IntermediateTerminal { vertex: 2, position: 2 }));
        assert!(ip.is_cover() && ip.satisfies_bounds());
        assert!(ip.intervals.iter().any(|q| q.start == 2 && q.end == 2));
        assert!(interval_partition(&g, 0, 1, C_INT, 0.2).is_err());
    }

    #[test]
    fn random_paths_obey_bounds() {
        for seed in 0..20 {
            let g = gen_random(80, 200, 4, seed, (0.001, 0.01)).unwrap();
            let ip = interval_partition(&g, g.terminal(0), g.terminal(1), C_INT, 0.05).unwrap();
            assert!(ip.is_cover() && ip.satisfies_bounds());
            assert!(ip.external_total_in_range(1e-12), "seed {seed}");
        }
    }

    #[test]
    fn deterministic_estimates_have_zero_spread() {
        let g = gen_caterpillar(6, 0.2).unwrap();
        let est = expected_distortion(&g, Algorithm::Voronoi, 5, 0, &RunOptions::default()).unwrap();
        let single = distortion(&g, &crate::minor::induce_global_minor(
            &g,
            &crate::noisy_voronoi::plain_voronoi(&g),
            &crate::graph::TerminalMetric::compute(&g),
        ))
        .unwrap();
        assert_eq!(est.max_of_means, single.worst);
        assert!(est.stderr.iter().all(|&s| s == 0.0));
        assert_eq!(est.mean_worst_stderr, 0.0);

        let two = gen_random(30, 60, 2, 1, (1.0, 2.0)).unwrap();
        for a in [Algorithm::Noisy, Algorithm::Ball] {
            let e = expected_distortion(&two, a, 4, 9, &RunOptions::default()).unwrap();
            assert_eq!(e.max_of_means, 1.0);
            assert_eq!(e.argmax_stderr, 0.0);
        }
    }

    #[test]
    fn one_trial_matches_one_run() {
        let g = gen_random(60, 150, 5, 3, (1.0, 2.0)).unwrap();
        let runner = Runner::new(&g);
        let est = expected_distortion_with(&runner, Algorithm::Fast, 1, 11, &RunOptions::default()).unwrap();
        let out = runner.run(Algorithm::Fast, 11, &RunOptions::default()).unwrap();
        let report = distortion(&g, &out.minor).unwrap();
        assert_eq!(est.max_of_means, report.worst);
        let summary = worst_distortion_trials(&runner, Algorithm::Fast, 1, 11, &RunOptions::default()).unwrap();
        assert_eq!(summary.mean, report.worst);
    }
}
