//! Minors induced by terminal partitions, under two edge-weight conventions,
//! and their distortion relative to the original terminal metric.
//!
//! * [`WeightMode::Global`]: edge `{t_i, t_j}` weighs `d_G(t_i, t_j)`.
//! * [`WeightMode::SingleCrossing`]: edge `{t_i, t_j}` weighs the length of
//!   the shortest `t_i`–`t_j` path inside `G[V_i ∪ V_j]` that crosses between
//!   the two clusters exactly once.


use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::graph::{dijkstra, shortest_path::dijkstra_within, DistanceOracle, TerminalMetric};
use crate::graph::{VertexId, WeightedGraph};
use crate::partition::{validate_partition, TerminalPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    Global,
    SingleCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinorEdge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InducedMinor {
    /// Original vertex id of each minor vertex; minor vertex `i` is `t_i`.
    pub terminals: Vec<VertexId>,
    /// Sorted by `(i, j)` with `i < j`.
    pub edges: Vec<MinorEdge>,
    pub weight_mode: WeightMode,
}

impl InducedMinor {
    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> Option<f64> {
        let key = (i.min(j), i.max(j));
        self.edges
            .binary_search_by_key(&key, |e| (e.i, e.j))
            .ok()
            .map(|idx| self.edges[idx].w)
    }

    /// The minor as a standalone graph on vertices `0..k`, all terminals.
    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let k = self.terminal_count();
        WeightedGraph::assemble(
            k,
            self.edges.iter().map(|e| (e.i, e.j, e.w)),
            (0..k).collect(),
            false,
        )
    }

    /// Compares edge sets exactly and weights within `rel_tol`.
    pub fn approx_eq(&self, other: &InducedMinor, rel_tol: f64) -> bool {
        self.terminals == other.terminals
            && self.weight_mode == other.weight_mode
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|(a, b)| {
                a.i == b.i && a.j == b.j && (a.w - b.w).abs() <= rel_tol * a.w.abs().max(b.w.abs())
            })
    }
}

/// Something that can answer `d_G(t_i, t_j)`.
pub trait TerminalDistances: Sync {
    fn terminal_distance(&self, i: usize, j: usize) -> f64;
}

impl TerminalDistances for TerminalMetric {
    fn terminal_distance(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

impl TerminalDistances for DistanceOracle<'_> {
    fn terminal_distance(&self, i: usize, j: usize) -> f64 {
        self.from_terminal(i).get(self.graph().terminal(j))
    }
}

/// Cluster pairs `(i, j)`, `i < j`, joined by at least one edge.
pub fn adjacent_cluster_pairs(g: &WeightedGraph, p: &TerminalPartition) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter_map(|e| {
            let (a, b) = (p.cluster_of(e.u)?, p.cluster_of(e.v)?);
            (a != b).then(|| (a.min(b), a.max(b)))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Global-mode minor with `d_G` supplied by `source`.
pub fn induce_global_minor(
    g: &WeightedGraph,
    p: &TerminalPartition,
    source: &impl TerminalDistances,
) -> InducedMinor {
    let edges = adjacent_cluster_pairs(g, p)
        .into_par_iter()
        .map(|(i, j)| MinorEdge { i, j, w: source.terminal_distance(i, j) })
        .collect();
    InducedMinor {
        terminals: g.terminals().to_vec(),
        edges,
        weight_mode: WeightMode::Global,
    }
}

/// Single-crossing minor from per-vertex in-cluster distances
/// `cluster_distances[v] = d_{G[V_i]}(t_i, v)` for `v ∈ V_i`, in one edge scan.
pub fn induce_single_crossing_minor(
    g: &WeightedGraph,
    p: &TerminalPartition,
    cluster_distances: &[f64],
) -> InducedMinor {
    let mut crossing: Vec<(usize, usize, f64)> = Vec::new();
    for e in g.edges() {
        let (Some(a), Some(b)) = (p.cluster_of(e.u), p.cluster_of(e.v)) else {
            continue;
        };
        if a != b {
            let w = cluster_distances[e.u] + e.w + cluster_distances[e.v];
            crossing.push((a.min(b), a.max(b), w));
        }
    }
    crossing.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then(x.2.total_cmp(&y.2)));
    crossing.dedup_by_key(|x| (x.0, x.1));
    InducedMinor {
        terminals: g.terminals().to_vec(),
        edges: crossing.into_iter().map(|(i, j, w)| MinorEdge { i, j, w }).collect(),
        weight_mode: WeightMode::SingleCrossing,
    }
}

/// Builds the induced minor of a valid partition. Global weights are taken
/// from `k` single-source runs; single-crossing weights require the
/// per-vertex in-cluster distances.
pub fn induce_minor(
    g: &WeightedGraph,
    p: &TerminalPartition,
    mode: WeightMode,
    cluster_distances: Option<&[f64]>,
) -> Result<InducedMinor> {
    validate_partition(g, p)?;
    match mode {
        WeightMode::Global => Ok(induce_global_minor(g, p, &DistanceOracle::new(g))),
        WeightMode::SingleCrossing => {
            let d = cluster_distances.ok_or(SprError::MissingClusterDistances)?;
            if d.len() != g.vertex_count() {
                return Err(SprError::MissingClusterDistances);
            }
            Ok(induce_single_crossing_minor(g, p, d))
        }
    }
}

/// `d_{G, V_i + V_j}(t_i, t_j)`: shortest `t_i`–`t_j` route inside the two
/// clusters using exactly one crossing edge, or `None` if no edge joins them.
pub fn single_crossing_distance(
    g: &WeightedGraph,
    cluster_i: &[VertexId],
    cluster_j: &[VertexId],
    t_i: VertexId,
    t_j: VertexId,
) -> Option<f64> {
    let n = g.vertex_count();
    let mut side = vec![0u8; n];
    for &v in cluster_i {
        side[v] = 1;
    }
    for &v in cluster_j {
        side[v] = 2;
    }
    let from_i = dijkstra_within(g, t_i, |v| side[v] == 1);
    let from_j = dijkstra_within(g, t_j, |v| side[v] == 2);
    let mut best: Option<f64> = None;
    for &u in cluster_i {
        for nb in g.neighbors(u) {
            if side[nb.vertex] == 2 {
                let w = from_i[u] + nb.weight + from_j[nb.vertex];
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistortionReport {
    k: usize,
    /// Row-major `k x k` ratios `d_M / d_G`; the diagonal is 1.
    pub per_pair: Vec<f64>,
    pub worst: f64,
    pub argmax_pair: (usize, usize),
}

impl DistortionReport {
    pub fn ratio(&self, i: usize, j: usize) -> f64 {
        self.per_pair[i * self.k + j]
    }

    pub fn terminal_count(&self) -> usize {
        self.k
    }

    /// Smallest off-diagonal ratio (1 when `k < 2`).
    pub fn min_ratio(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.k {
            for j in 0..self.k {
                if i != j {
                    best = best.min(self.ratio(i, j));
                }
            }
        }
        if best.is_finite() {
            best
        } else {
            1.0
        }
    }
}

fn better(a: (f64, (usize, usize)), b: (f64, (usize, usize))) -> (f64, (usize, usize)) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Worst ratio `d_M / d_G` and the pair realizing it, without materializing
/// the full ratio matrix.
pub fn worst_distortion(metric: &TerminalMetric, m: &InducedMinor) -> Result<(f64, (usize, usize))> {
    let k = m.terminal_count();
    check_sizes(metric, m)?;
    let minor = m.to_graph()?;
    let worst = (0..k)
        .into_par_iter()
        .map(|i| {
            let dm = minor_distances(&minor, i);
            let mut row_best = (f64::NEG_INFINITY, (0, 0));
            for j in i + 1..k {
                row_best = better(row_best, (dm[j] / metric.get(i, j), (i, j)));
            }
            row_best
        })
        .reduce(|| (f64::NEG_INFINITY, (0, 0)), better);
    Ok(if k < 2 { (1.0, (0, 0)) } else { worst })
}

/// Distances from `source` in a minor graph. Connected minors with `k - 1`
/// edges are trees, where a plain traversal gives the same sums as Dijkstra
/// without the heap.
fn minor_distances(minor: &WeightedGraph, source: usize) -> Vec<f64> {
    let k = minor.vertex_count();
    if minor.edge_count() + 1 != k {
        return dijkstra(minor, source).into_vec();
    }
    let mut dist = vec![f64::INFINITY; k];
    dist[source] = 0.0;
    let mut stack = vec![source];
    while let Some(u) = stack.pop() {
        for nb in minor.neighbors(u) {
            if dist[nb.vertex].is_infinite() {
                dist[nb.vertex] = dist[u] + nb.weight;
                stack.push(nb.vertex);
            }
        }
    }
    // unreached vertices mean a cycle elsewhere, so this was not a tree
    if dist.iter().any(|d| d.is_infinite()) {
        return dijkstra(minor, source).into_vec();
    }
    dist
}

fn check_sizes(metric: &TerminalMetric, m: &InducedMinor) -> Result<()> {
    if metric.terminal_count() != m.terminal_count() {
        return Err(SprError::PreconditionViolated(format!(
            "minor has {} terminals, metric has {}",
            m.terminal_count(),
            metric.terminal_count()
        )));
    }
    Ok(())
}

/// Full ratio matrix against a precomputed terminal metric.
pub fn distortion_with_metric(metric: &TerminalMetric, m: &InducedMinor) -> Result<DistortionReport> {
    let k = m.terminal_count();
    check_sizes(metric, m)?;
    let minor = m.to_graph()?;
    let rows: Vec<Vec<f64>> = (0..k)
        .into_par_iter()
        .map(|i| {
            let dm = minor_distances(&minor, i);
            (0..k)
                .map(|j| if i == j { 1.0 } else { dm[j] / metric.get(i, j) })
                .collect()
        })
        .collect();
    let per_pair = rows.concat();
    let mut best = if k < 2 { (1.0, (0, 0)) } else { (f64::NEG_INFINITY, (0, 0)) };
    for i in 0..k {
        for j in i + 1..k {
            best = better(best, (per_pair[i * k + j], (i, j)));
        }
    }
    Ok(DistortionReport { k, per_pair, worst: best.0, argmax_pair: best.1 })
}

/// All-pairs distances in the minor divided by the terminal distances in `g`.
pub fn distortion(g: &WeightedGraph, m: &InducedMinor) -> Result<DistortionReport> {
    distortion_with_metric(&TerminalMetric::compute(g), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::instances::gen_caterpillar;

    /// t_1 = 0, x = 1, y = 2, t_2 = 3; V_1 = {t_1, y}, V_2 = {x, t_2}.
    fn gadget() -> (WeightedGraph, TerminalPartition) {
        let g = build_graph(
            [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 2, 10.0), (1, 3, 10.0)],
            vec![0, 3],
        )
        .unwrap();
        let p = TerminalPartition::from_clusters(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        (g, p)
    }

    /// Shortest t_1–t_2 walk through exactly one crossing edge, by enumerating
    /// every simple path and counting crossings.
    fn brute_force_single_crossing(g: &WeightedGraph, p: &TerminalPartition, s: usize, t: usize) -> f64 {
        fn go(
            g: &WeightedGraph,
            p: &TerminalPartition,
            u: usize,
            t: usize,
            crossings: usize,
            seen: &mut Vec<bool>,
            acc: f64,
        ) -> f64 {
            if u == t {
                return if crossings == 1 { acc } else { f64::INFINITY };
            }
            let mut best = f64::INFINITY;
            for nb in g.neighbors(u) {
                let v = nb.vertex;
                if seen[v] {
                    continue;
                }
                let c = crossings + usize::from(p.cluster_of(u) != p.cluster_of(v));
                seen[v] = true;
                best = best.min(go(g, p, v, t, c, seen, acc + nb.weight));
                seen[v] = false;
            }
            best
        }
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        go(g, p, s, t, 0, &mut seen, 0.0)
    }

    #[test]
    fn gadget_weights_under_both_modes() {
        let (g, p) = gadget();
        assert_eq!(brute_force_single_crossing(&g, &p, 0, 3), 11.0);
        assert_eq!(single_crossing_distance(&g, p.members(0), p.members(1), 0, 3), Some(11.0));

        let global = induce_minor(&g, &p, WeightMode::Global, None).unwrap();
        assert_eq!(global.edges, vec![MinorEdge { i: 0, j: 1, w: 3.0 }]);

        let mut keys = vec![0.0; 4];
        for (i, &t) in g.terminals().iter().enumerate() {
            let d = dijkstra_within(&g, t, |v| p.cluster_of(v) == Some(i));
            for &v in p.members(i) {
                keys[v] = d[v];
            }
        }
        let single = induce_minor(&g, &p, WeightMode::SingleCrossing, Some(&keys)).unwrap();
        assert_eq!(single.edge_weight(0, 1), Some(11.0));
        assert!(matches!(
            induce_minor(&g, &p, WeightMode::SingleCrossing, None),
            Err(SprError::MissingClusterDistances)
        ));
    }

    #[test]
    fn no_crossing_edge_means_no_distance() {
        let g = build_graph([(0, 1, 1.0), (1, 2, 1.0)], vec![0, 1, 2]).unwrap();
        assert_eq!(single_crossing_distance(&g, &[0], &[2], 0, 2), None);
        assert_eq!(single_crossing_distance(&g, &[0], &[1], 0, 1), Some(1.0));
    }

    #[test]
    fn two_terminals_have_unit_distortion() {
        let g = build_graph([(0, 1, 2.0), (1, 2, 3.0)], vec![0, 2]).unwrap();
        let p = TerminalPartition::from_clusters(3, vec![vec![0], vec![1, 2]]).unwrap();
        let m = induce_minor(&g, &p, WeightMode::Global, None).unwrap();
        let r = distortion(&g, &m).unwrap();
        assert_eq!(r.worst, 1.0);
        assert_eq!(r.argmax_pair, (0, 1));
    }

    #[test]
    fn caterpillar_voronoi_minor() {
        let (k, eps) = (7, 0.1);
        let g = gen_caterpillar(k, eps).unwrap();
        let clusters: Vec<Vec<_>> = (0..k).map(|j| vec![j, k + j]).collect();
        let p = TerminalPartition::from_clusters(2 * k, clusters).unwrap();
        let m = induce_minor(&g, &p, WeightMode::Global, None).unwrap();
        assert_eq!(m.edges.len(), k - 1);
        for e in &m.edges {
            assert_eq!(e.j, e.i + 1);
            assert!((e.w - (2.0 + eps)).abs() < 1e-12);
        }
        let r = distortion(&g, &m).unwrap();
        let kf = k as f64;
        let expected = (kf - 1.0) * (2.0 + eps) / (2.0 + (kf - 1.0) * eps);
        assert!((r.worst - expected).abs() < 1e-9 * expected);
        assert_eq!(r.argmax_pair, (0, k - 1));
        let (w, pair) = worst_distortion(&TerminalMetric::compute(&g), &m).unwrap();
        assert_eq!((w, pair), (r.worst, r.argmax_pair));
    }

    #[test]
    fn tree_traversal_matches_dijkstra() {
        // a tree, and a disconnected graph that has k - 1 edges and a cycle
        let tree = build_graph([(0, 1, 0.1), (1, 2, 0.2), (1, 3, 0.7), (3, 4, 1.3)], (0..5).collect()).unwrap();
        let cyclic =
            WeightedGraph::assemble(5, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0), (3, 4, 1.0)], (0..5).collect(), false)
                .unwrap();
        for g in [tree, cyclic] {
            for s in 0..5 {
                assert_eq!(minor_distances(&g, s), dijkstra(&g, s).into_vec());
            }
        }
    }
}
