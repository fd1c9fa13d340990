//! The reference noisy-Voronoi clustering and the plain Voronoi baseline.
//!
//! Terminal `t_j` draws `g_j ~ Geo(p)`, sets `R_j = (1 + delta)^{g_j}` and
//! grows a cluster from the still-unclustered Steiner vertices, admitting a
//! vertex `v` reached from the cluster iff `d_G(v, t_j) <= R_j * D(v)`.
//! Because the admission test does not depend on the cluster built so far,
//! the result is the set of admissible vertices reachable from `t_j`, so any
//! frontier discipline yields the same cluster. FIFO is the default.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Result, SprError};
use crate::graph::shortest_path::shortest_path_tree;
use crate::graph::{DistanceMap, DistanceOracle, VertexId, WeightedGraph};
use crate::heap::HeapCounters;
use crate::minor::{induce_global_minor, InducedMinor, WeightMode};
use crate::partition::{PartitionViolation, TerminalPartition};
use crate::sampling::{magnitude, RandomPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrontierPolicy {
    /// Extract in insertion order.
    #[default]
    Fifo,
    /// Extract the most recently inserted vertex.
    Lifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub frontier: FrontierPolicy,
    /// Process terminals in a seeded random order instead of index order.
    pub shuffle_terminals: bool,
}

/// One clustering round.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTrace {
    pub terminal: usize,
    pub g: u32,
    #[serde(rename = "R")]
    pub magnitude: f64,
    pub cluster_size: usize,
    pub frontier_peak: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heap: Option<HeapCounters>,
}

#[derive(Debug, Clone)]
pub struct ClusteringOutcome {
    pub partition: TerminalPartition,
    pub minor: InducedMinor,
    /// Rounds in processing order.
    pub trace: Vec<RoundTrace>,
}

/// A cluster returned by [`create_cluster`].
#[derive(Debug, Clone, PartialEq)]
pub struct GrownCluster {
    /// Members in admission order, starting with the terminal.
    pub vertices: Vec<VertexId>,
    pub frontier_peak: usize,
}

pub(crate) const FREE: u8 = 0;
pub(crate) const QUEUED: u8 = 1;
pub(crate) const MEMBER: u8 = 2;
pub(crate) const DENIED: u8 = 3;

/// Per-vertex state with O(1) reset between rounds, via an epoch counter.
#[derive(Debug, Clone)]
pub(crate) struct Stamps {
    stamp: Vec<u32>,
    state: Vec<u8>,
    epoch: u32,
}

impl Stamps {
    pub fn new(n: usize) -> Self {
        Stamps { stamp: vec![0; n], state: vec![FREE; n], epoch: 1 }
    }

    pub fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> u8 {
        if self.stamp[v] == self.epoch {
            self.state[v]
        } else {
            FREE
        }
    }

    #[inline]
    pub fn set(&mut self, v: VertexId, s: u8) {
        self.stamp[v] = self.epoch;
        self.state[v] = s;
    }
}

struct Workspace {
    stamps: Stamps,
    frontier: VecDeque<VertexId>,
}

#[allow(clippy::too_many_arguments)]
fn grow(
    ws: &mut Workspace,
    g: &WeightedGraph,
    unclustered: &[bool],
    t_j: VertexId,
    r_j: f64,
    nearest: &DistanceMap,
    d_tj: &DistanceMap,
    policy: FrontierPolicy,
) -> GrownCluster {
    ws.stamps.reset();
    ws.frontier.clear();
    let mut vertices = vec![t_j];
    let mut peak = 0;
    let mut admitted = Some(t_j);
    ws.stamps.set(t_j, MEMBER);
    loop {
        if let Some(u) = admitted.take() {
            for nb in g.neighbors(u) {
                let x = nb.vertex;
                if unclustered[x] && ws.stamps.get(x) == FREE {
                    ws.stamps.set(x, QUEUED);
                    ws.frontier.push_back(x);
                }
            }
            peak = peak.max(ws.frontier.len());
        }
        let next = match policy {
            FrontierPolicy::Fifo => ws.frontier.pop_front(),
            FrontierPolicy::Lifo => ws.frontier.pop_back(),
        };
        let Some(v) = next else { break };
        if d_tj.get(v) <= r_j * nearest.get(v) {
            ws.stamps.set(v, MEMBER);
            vertices.push(v);
            admitted = Some(v);
        } else {
            ws.stamps.set(v, DENIED);
        }
    }
    GrownCluster { vertices, frontier_peak: peak }
}

/// Grows one cluster around `t_j` inside `unclustered` (the mask of `V_⊥`).
/// `nearest` is `D(·)` and `d_tj` is `d_G(t_j, ·)`, both on the full graph.
pub fn create_cluster(
    g: &WeightedGraph,
    unclustered: &[bool],
    t_j: VertexId,
    r_j: f64,
    nearest: &DistanceMap,
    d_tj: &DistanceMap,
    policy: FrontierPolicy,
) -> GrownCluster {
    let mut ws = Workspace { stamps: Stamps::new(g.vertex_count()), frontier: VecDeque::new() };
    grow(&mut ws, g, unclustered, t_j, r_j, nearest, d_tj, policy)
}

/// Order in which terminals are processed.
pub(crate) fn processing_order(k: usize, plan: &RandomPlan, config: &RunConfig) -> Vec<usize> {
    if config.shuffle_terminals {
        plan.terminal_order(k)
    } else {
        (0..k).collect()
    }
}

/// Everything in one cluster, for the degenerate single-terminal case.
pub(crate) fn single_cluster(g: &WeightedGraph, mode: WeightMode) -> (TerminalPartition, InducedMinor) {
    let p = TerminalPartition::from_assignment(1, vec![Some(0); g.vertex_count()]);
    let m = InducedMinor { terminals: g.terminals().to_vec(), edges: Vec::new(), weight_mode: mode };
    (p, m)
}

pub(crate) fn finish_assignment(
    k: usize,
    assignment: Vec<Option<usize>>,
) -> Result<TerminalPartition> {
    if let Some(v) = assignment.iter().position(Option::is_none) {
        return Err(SprError::InvalidPartition(PartitionViolation::UnassignedVertex(v)));
    }
    Ok(TerminalPartition::from_assignment(k, assignment))
}

pub fn noisy_voronoi(g: &WeightedGraph, plan: &RandomPlan, config: RunConfig) -> Result<ClusteringOutcome> {
    noisy_voronoi_with(&DistanceOracle::new(g), plan, config)
}

/// As [`noisy_voronoi`], reusing the distance caches of `oracle`.
pub fn noisy_voronoi_with(
    oracle: &DistanceOracle<'_>,
    plan: &RandomPlan,
    config: RunConfig,
) -> Result<ClusteringOutcome> {
    let g = oracle.graph();
    let k = g.terminal_count();
    if k == 1 {
        let (partition, minor) = single_cluster(g, WeightMode::Global);
        return Ok(ClusteringOutcome { partition, minor, trace: Vec::new() });
    }
    plan.validate(k)?;
    let n = g.vertex_count();
    let nearest = oracle.nearest_terminal();
    let mut unclustered: Vec<bool> = (0..n).map(|v| !g.is_terminal(v)).collect();
    let mut assignment: Vec<Option<usize>> = (0..n).map(|v| g.terminal_index(v)).collect();
    let mut ws = Workspace { stamps: Stamps::new(n), frontier: VecDeque::new() };
    let mut trace = Vec::with_capacity(k);

    for j in processing_order(k, plan, &config) {
        let gj = plan.geometric_draw(j)?;
        let r = magnitude(gj, plan.delta);
        let cluster = grow(
            &mut ws,
            g,
            &unclustered,
            g.terminal(j),
            r,
            nearest,
            oracle.from_terminal(j),
            config.frontier,
        );
        for &v in &cluster.vertices {
            unclustered[v] = false;
            assignment[v] = Some(j);
        }
        trace.push(RoundTrace {
            terminal: j,
            g: gj,
            magnitude: r,
            cluster_size: cluster.vertices.len(),
            frontier_peak: cluster.frontier_peak,
            heap: None,
        });
    }
    let partition = finish_assignment(k, assignment)?;
    let minor = induce_global_minor(g, &partition, oracle);
    Ok(ClusteringOutcome { partition, minor, trace })
}

/// Voronoi cells: each vertex joins its nearest terminal, ties going to the
/// smaller terminal index. Cells follow the multi-source shortest-path
/// forest and are therefore connected.
pub fn plain_voronoi(g: &WeightedGraph) -> TerminalPartition {
    let tree = shortest_path_tree(g, g.terminals());
    TerminalPartition::from_assignment(
        g.terminal_count(),
        tree.owner.into_iter().map(Some).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, dijkstra, terminal_distances};
    use crate::instances::{gen_caterpillar, gen_random};
    use crate::minor::distortion;
    use crate::partition::validate_partition;

    fn caterpillar_round(k: usize, eps: f64, r: f64, policy: FrontierPolicy) -> Vec<VertexId> {
        let g = gen_caterpillar(k, eps).unwrap();
        let unclustered: Vec<bool> = (0..g.vertex_count()).map(|v| !g.is_terminal(v)).collect();
        let d = terminal_distances(&g);
        let mut c = create_cluster(&g, &unclustered, 0, r, &d, &dijkstra(&g, 0), policy).vertices;
        c.sort_unstable();
        c
    }

    #[test]
    fn caterpillar_first_round() {
        // d(v_j, t_1) = 1 + (j - 1) eps <= R iff j <= 6. With eps = 0.1 the
        // float sum for v_6 is 1.5000000000000004, so R carries a 1e-12 slack;
        // eps = 0.125 is exact and hits the boundary without it.
        let mut want = vec![0];
        want.extend(10..16);
        let r = 1.5 * (1.0 + 1e-12);
        assert_eq!(caterpillar_round(10, 0.1, r, FrontierPolicy::Fifo), want);
        assert_eq!(caterpillar_round(10, 0.1, r, FrontierPolicy::Lifo), want);
        assert_eq!(caterpillar_round(10, 0.125, 1.625, FrontierPolicy::Fifo), want);
        assert_eq!(caterpillar_round(10, 0.1, 0.99, FrontierPolicy::Fifo), vec![0]);
        assert_eq!(caterpillar_round(10, 0.1, 1.05, FrontierPolicy::Fifo), vec![0, 10]);
    }

    #[test]
    fn small_magnitudes_give_voronoi_cells() {
        let k = 8;
        let g = gen_caterpillar(k, 0.5).unwrap();
        let plan = RandomPlan::new(k, 0).unwrap().with_draws(vec![1; k]).unwrap();
        let out = noisy_voronoi(&g, &plan, RunConfig::default()).unwrap();
        assert_eq!(out.partition, plain_voronoi(&g));
        for j in 0..k {
            assert_eq!(out.partition.members(j), &[j, k + j]);
        }
    }

    #[test]
    fn star_center_joins_first_terminal() {
        // center 0, terminal leaves 1..=4
        let g = build_graph((1..5).map(|t| (0, t, 1.0)), vec![1, 2, 3, 4]).unwrap();
        let plan = RandomPlan::new(4, 5).unwrap();
        let out = noisy_voronoi(&g, &plan, RunConfig::default()).unwrap();
        assert_eq!(out.partition.cluster_of(0), Some(0));
        for j in 1..4 {
            assert_eq!(out.minor.edge_weight(0, j), Some(2.0));
        }
        assert_eq!(out.minor.edges.len(), 3);
        let report = distortion(&g, &out.minor).unwrap();
        assert_eq!(report.ratio(1, 2), 2.0);
        assert_eq!(report.worst, 2.0);
    }

    #[test]
    fn two_terminals_have_unit_distortion() {
        for seed in 0..5 {
            let g = gen_random(40, 80, 2, seed, (1.0, 3.0)).unwrap();
            let out = noisy_voronoi(&g, &RandomPlan::new(2, seed).unwrap(), RunConfig::default()).unwrap();
            assert_eq!(distortion(&g, &out.minor).unwrap().worst, 1.0);
        }
    }

    #[test]
    fn outputs_are_valid_and_reproducible() {
        for seed in 0..10 {
            let g = gen_random(120, 300, 8, seed, (1.0, 5.0)).unwrap();
            let plan = RandomPlan::new(8, seed).unwrap();
            let a = noisy_voronoi(&g, &plan, RunConfig::default()).unwrap();
            assert_eq!(validate_partition(&g, &a.partition), Ok(()));
            let b = noisy_voronoi(&g, &plan, RunConfig::default()).unwrap();
            assert_eq!(a.partition, b.partition);
            assert_eq!(a.minor, b.minor);
            let lifo = RunConfig { frontier: FrontierPolicy::Lifo, ..RunConfig::default() };
            assert_eq!(noisy_voronoi(&g, &plan, lifo).unwrap().partition, a.partition);
            let shuffled = RunConfig { shuffle_terminals: true, ..RunConfig::default() };
            let s = noisy_voronoi(&g, &plan, shuffled).unwrap();
            assert_eq!(validate_partition(&g, &s.partition), Ok(()));
            let order: Vec<usize> = s.trace.iter().map(|r| r.terminal).collect();
            assert_eq!(order, plan.terminal_order(8));
        }
    }

    #[test]
    fn clusters_grow_with_magnitude() {
        for seed in 0..10 {
            let g = gen_random(150, 400, 6, seed, (1.0, 4.0)).unwrap();
            let d = terminal_distances(&g);
            // freeze V_⊥ as it stands after clustering t_1 with R = 1.2
            let mut unclustered: Vec<bool> = (0..g.vertex_count()).map(|v| !g.is_terminal(v)).collect();
            let first = create_cluster(&g, &unclustered, g.terminal(0), 1.2, &d, &dijkstra(&g, g.terminal(0)), FrontierPolicy::Fifo);
            for &v in &first.vertices {
                unclustered[v] = false;
            }
            let t = g.terminal(1);
            let dt = dijkstra(&g, t);
            for r in [1.01, 1.1, 1.3, 2.0] {
                let small = create_cluster(&g, &unclustered, t, r, &d, &dt, FrontierPolicy::Fifo);
                let big = create_cluster(&g, &unclustered, t, 2.0 * r, &d, &dt, FrontierPolicy::Fifo);
                assert!(small.vertices.iter().all(|v| big.vertices.contains(v)));
            }
        }
    }

    #[test]
    fn voronoi_ties_go_to_smaller_index() {
        let g = build_graph([(0, 1, 1.0), (1, 2, 1.0)], vec![2, 0]).unwrap();
        let p = plain_voronoi(&g);
        assert_eq!(p.cluster_of(1), Some(0));
        assert_eq!(validate_partition(&g, &p), Ok(()));
    }

    #[test]
    fn single_terminal_is_trivial() {
        let g = build_graph([(0, 1, 1.0), (1, 2, 1.0)], vec![1]).unwrap();
        let plan = RandomPlan { seed: 0, p: 0.2, delta: 0.1, draws: None };
        let out = noisy_voronoi(&g, &plan, RunConfig::default()).unwrap();
        assert_eq!(out.partition.members(0), &[0, 1, 2]);
        assert!(out.minor.edges.is_empty());
    }
}
