use std::sync::OnceLock;

use rayon::prelude::*;

use super::shortest_path::{dijkstra, terminal_distances, DistanceMap};
use super::WeightedGraph;

/// Lazily computed per-terminal distance maps plus the multi-source `D(v)`
/// map, shareable across threads and across runs on the same graph.
#[derive(Debug)]
pub struct DistanceOracle<'g> {
    graph: &'g WeightedGraph,
    nearest: OnceLock<DistanceMap>,
    per_terminal: Vec<OnceLock<DistanceMap>>,
}

impl<'g> DistanceOracle<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        DistanceOracle {
            graph,
            nearest: OnceLock::new(),
            per_terminal: (0..graph.terminal_count()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    /// `D(v)` for every vertex.
    pub fn nearest_terminal(&self) -> &DistanceMap {
        self.nearest.get_or_init(|| terminal_distances(self.graph))
    }

    /// `d_G(t_j, ·)`, computed on first use.
    pub fn from_terminal(&self, j: usize) -> &DistanceMap {
        self.per_terminal[j].get_or_init(|| dijkstra(self.graph, self.graph.terminal(j)))
    }

    pub fn terminal_metric(&self) -> TerminalMetric {
        let g = self.graph;
        let k = g.terminal_count();
        let mut dist = vec![0.0; k * k];
        for i in 0..k {
            let row = self.from_terminal(i);
            for j in 0..k {
                dist[i * k + j] = row.get(g.terminal(j));
            }
        }
        TerminalMetric { k, dist }
    }
}

/// Dense `k x k` matrix of terminal-to-terminal distances.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminalMetric {
    k: usize,
    dist: Vec<f64>,
}

impl TerminalMetric {
    /// Runs one Dijkstra per terminal, keeping only terminal entries.
    pub fn compute(g: &WeightedGraph) -> Self {
        let k = g.terminal_count();
        let rows: Vec<Vec<f64>> = (0..k)
            .into_par_iter()
            .map(|i| {
                let d = dijkstra(g, g.terminal(i));
                g.terminals().iter().map(|&t| d.get(t)).collect()
            })
            .collect();
        TerminalMetric { k, dist: rows.concat() }
    }

    pub fn terminal_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.k..(i + 1) * self.k]
    }

    /// Smallest off-diagonal entry.
    pub fn min_pair_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.k {
            for j in i + 1..self.k {
                let d = self.get(i, j);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }
}
