//! Dijkstra variants: single source, multi-source (virtual super-source),
//! vertex-restricted, and radius-bounded with reusable scratch space.
//!
//! All variants extract vertices in `(distance, vertex id)` order, which makes
//! every distance array and parent pointer reproducible run to run.

use super::{VertexId, WeightedGraph};
use crate::error::{Result, SprError};
use crate::heap::IndexedMinHeap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Vertex(VertexId),
    /// A virtual vertex joined to every terminal by a zero-weight edge.
    SuperSource,
}

#[derive(Debug, Clone)]
pub struct DistanceMap {
    source: Source,
    dist: Vec<f64>,
}

impl DistanceMap {
    pub fn source(&self) -> Source {
        self.source
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.dist
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.dist
    }

    /// Largest amount by which some edge violates `|d(u) - d(v)| <= w(u, v)`.
    /// Zero (up to rounding) for any exact shortest-path distance map.
    pub fn max_edge_violation(&self, g: &WeightedGraph) -> f64 {
        g.edges()
            .iter()
            .map(|e| ((self.dist[e.u] - self.dist[e.v]).abs() - e.w).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// Full shortest-path tree from one or many sources.
#[derive(Debug, Clone)]
pub(crate) struct ShortestPathTree {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
    /// Index (into the source list) of the source each vertex descends from.
    pub owner: Vec<usize>,
}

/// Multi-source Dijkstra. Among equally short routes a vertex takes the
/// source with the smallest index, so `owner` is the lexicographically
/// smallest `(distance, source index)` and each owner class is connected
/// through parent pointers.
pub(crate) fn shortest_path_tree(g: &WeightedGraph, sources: &[VertexId]) -> ShortestPathTree {
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut owner = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = IndexedMinHeap::new(n);
    for (i, &s) in sources.iter().enumerate() {
        if dist[s] > 0.0 {
            dist[s] = 0.0;
            owner[s] = i;
            heap.push(s, 0.0);
        }
    }
    while let Some((u, du)) = heap.pop() {
        done[u] = true;
        for nb in g.neighbors(u) {
            let v = nb.vertex;
            if done[v] {
                continue;
            }
            let nd = du + nb.weight;
            if nd < dist[v] || (nd == dist[v] && owner[u] < owner[v]) {
                dist[v] = nd;
                parent[v] = Some(u);
                owner[v] = owner[u];
                heap.push_or_decrease(v, nd);
            }
        }
    }
    ShortestPathTree { dist, parent, owner }
}

fn distances_from(g: &WeightedGraph, source: VertexId) -> Vec<f64> {
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = IndexedMinHeap::new(n);
    dist[source] = 0.0;
    heap.push(source, 0.0);
    while let Some((u, du)) = heap.pop() {
        for nb in g.neighbors(u) {
            let nd = du + nb.weight;
            if nd < dist[nb.vertex] {
                dist[nb.vertex] = nd;
                heap.push_or_decrease(nb.vertex, nd);
            }
        }
    }
    dist
}

/// Exact single-source distances.
pub fn dijkstra(g: &WeightedGraph, source: VertexId) -> DistanceMap {
    assert!(source < g.vertex_count(), "source {source} out of range");
    DistanceMap {
        source: Source::Vertex(source),
        dist: distances_from(g, source),
    }
}

/// `D(v)`, the distance from each vertex to its closest terminal, in one
/// multi-source run.
pub fn terminal_distances(g: &WeightedGraph) -> DistanceMap {
    DistanceMap {
        source: Source::SuperSource,
        dist: shortest_path_tree(g, g.terminals()).dist,
    }
}

/// Vertex sequence of the deterministic shortest path from `s` to `t`.
pub fn shortest_path(g: &WeightedGraph, s: VertexId, t: VertexId) -> Vec<VertexId> {
    let tree = shortest_path_tree(g, &[s]);
    let mut path = vec![t];
    let mut cur = t;
    while let Some(p) = tree.parent[cur] {
        path.push(p);
        cur = p;
    }
    assert_eq!(cur, s, "graph must be connected");
    path.reverse();
    path
}

/// Smallest distance between two distinct terminals.
pub fn min_terminal_pair_distance(g: &WeightedGraph) -> Result<f64> {
    let k = g.terminal_count();
    if k < 2 {
        return Err(SprError::FewerThanTwoTerminals(k));
    }
    let mut best = f64::INFINITY;
    for i in 0..k - 1 {
        let dist = distances_from(g, g.terminal(i));
        for j in i + 1..k {
            best = best.min(dist[g.terminal(j)]);
        }
    }
    Ok(best)
}

/// Distances from `source` in the subgraph induced by vertices for which
/// `allowed` holds (the source is always included). Unreached vertices are
/// infinite.
pub fn dijkstra_within(
    g: &WeightedGraph,
    source: VertexId,
    allowed: impl Fn(VertexId) -> bool,
) -> Vec<f64> {
    let mut search = BoundedSearch::new(g.vertex_count());
    let mut dist = vec![f64::INFINITY; g.vertex_count()];
    search.run(g, source, f64::INFINITY, allowed, |v, d| dist[v] = d);
    dist
}

/// Radius-bounded Dijkstra with scratch arrays reused between searches, so
/// repeated small searches cost time proportional to what they touch.
#[derive(Debug, Clone)]
pub struct BoundedSearch {
    heap: IndexedMinHeap,
    dist: Vec<f64>,
    touched: Vec<VertexId>,
}

impl BoundedSearch {
    pub fn new(vertex_count: usize) -> Self {
        BoundedSearch {
            heap: IndexedMinHeap::new(vertex_count),
            dist: vec![f64::INFINITY; vertex_count],
            touched: Vec::new(),
        }
    }

    /// Visits, in extraction order, every vertex within distance `radius` of
    /// `source` in the subgraph induced by `allowed` (plus the source).
    pub fn run(
        &mut self,
        g: &WeightedGraph,
        source: VertexId,
        radius: f64,
        allowed: impl Fn(VertexId) -> bool,
        mut visit: impl FnMut(VertexId, f64),
    ) {
        self.dist[source] = 0.0;
        self.touched.push(source);
        self.heap.push(source, 0.0);
        while let Some((u, du)) = self.heap.pop() {
            visit(u, du);
            for nb in g.neighbors(u) {
                let v = nb.vertex;
                let nd = du + nb.weight;
                if nd > radius || nd >= self.dist[v] || !allowed(v) {
                    continue;
                }
                if self.dist[v].is_infinite() {
                    self.touched.push(v);
                }
                self.dist[v] = nd;
                self.heap.push_or_decrease(v, nd);
            }
        }
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
        }
        self.touched.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn four_cycle() -> WeightedGraph {
        build_graph([(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 10.0)], vec![0, 3]).unwrap()
    }

    /// Length of the shortest simple path, by exhaustive search.
    fn brute_force_distance(g: &WeightedGraph, s: VertexId, t: VertexId) -> f64 {
        fn go(g: &WeightedGraph, u: VertexId, t: VertexId, seen: &mut Vec<bool>, acc: f64) -> f64 {
            if u == t {
                return acc;
            }
            let mut best = f64::INFINITY;
            for nb in g.neighbors(u) {
                if !seen[nb.vertex] {
                    seen[nb.vertex] = true;
                    best = best.min(go(g, nb.vertex, t, seen, acc + nb.weight));
                    seen[nb.vertex] = false;
                }
            }
            best
        }
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        go(g, s, t, &mut seen, 0.0)
    }

    #[test]
    fn heavy_edge_is_bypassed() {
        let g = four_cycle();
        assert_eq!(brute_force_distance(&g, 0, 3), 3.0);
        let d = dijkstra(&g, 0);
        assert_eq!(d.get(3), 3.0);
        assert_eq!(d.get(0), 0.0);
        assert_eq!(d.max_edge_violation(&g), 0.0);
        assert_eq!(shortest_path(&g, 0, 3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn star_terminal_distance() {
        // center 0, terminal leaves at weights 2, 3, 5
        let g = build_graph([(0, 1, 2.0), (0, 2, 3.0), (0, 3, 5.0)], vec![1, 2, 3]).unwrap();
        let d = terminal_distances(&g);
        assert_eq!(d.source(), Source::SuperSource);
        assert_eq!(d.get(0), 2.0);
        for &t in g.terminals() {
            assert_eq!(d.get(t), 0.0);
        }
    }

    #[test]
    fn min_pair_distance_examples() {
        let g = build_graph([(0, 1, 7.0)], vec![0, 1]).unwrap();
        assert_eq!(min_terminal_pair_distance(&g).unwrap(), 7.0);
        let tri = build_graph([(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)], vec![0, 1, 2]).unwrap();
        assert_eq!(min_terminal_pair_distance(&tri).unwrap(), 1.0);
        let single = build_graph([(0, 1, 1.0)], vec![0]).unwrap();
        assert!(matches!(
            min_terminal_pair_distance(&single),
            Err(SprError::FewerThanTwoTerminals(1))
        ));
    }

    #[test]
    fn owner_ties_go_to_smaller_index() {
        // path t0 - m - t1 with equal weights; t1 listed first.
        let g = build_graph([(0, 1, 1.0), (1, 2, 1.0)], vec![2, 0]).unwrap();
        let tree = shortest_path_tree(&g, g.terminals());
        assert_eq!(tree.owner[1], 0);
        assert_eq!(tree.parent[1], Some(2));
    }

    #[test]
    fn restricted_and_bounded_search() {
        let g = four_cycle();
        let d = dijkstra_within(&g, 0, |v| v != 1);
        assert_eq!(d[3], 10.0);
        assert_eq!(d[2], 11.0);
        assert!(d[1].is_infinite());

        let mut search = BoundedSearch::new(4);
        let mut seen = Vec::new();
        search.run(&g, 0, 2.0, |_| true, |v, d| seen.push((v, d)));
        assert_eq!(seen, vec![(0, 0.0), (1, 1.0), (2, 2.0)]);
        seen.clear();
        search.run(&g, 3, 1.0, |_| true, |v, d| seen.push((v, d)));
        assert_eq!(seen, vec![(3, 0.0), (2, 1.0)]);
    }
}
