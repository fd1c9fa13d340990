//! Undirected positive-weighted graphs with a designated terminal set.
//!
//! A [`WeightedGraph`] is immutable once built. Parallel edges are collapsed
//! to their minimum weight, neighbor lists are sorted by vertex id, and the
//! graph is checked to be connected. The shortest-path primitives live in
//! [`shortest_path`]; the text format in [`io`].

pub mod io;
mod oracle;
pub mod shortest_path;
mod subdivide;

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Result, SprError};

pub use oracle::{DistanceOracle, TerminalMetric};
pub use shortest_path::{
    dijkstra, min_terminal_pair_distance, shortest_path, terminal_distances, DistanceMap, Source,
};
pub use subdivide::{subdivide_edges, SubdivisionRecord};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: f64,
}

/// One entry of a vertex's adjacency list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub vertex: VertexId,
    pub weight: f64,
    pub edge: EdgeId,
}

#[derive(Debug, Clone)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
    terminals: Vec<VertexId>,
    terminal_index: Vec<Option<usize>>,
}

/// Builds a graph whose vertex count is one past the largest edge endpoint.
pub fn build_graph(
    edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
    terminals: Vec<VertexId>,
) -> Result<WeightedGraph> {
    let edges: Vec<_> = edges.into_iter().collect();
    let n = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    WeightedGraph::new(n, edges, terminals)
}

impl WeightedGraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
        terminals: Vec<VertexId>,
    ) -> Result<Self> {
        Self::assemble(vertex_count, edges, terminals, true)
    }

    /// Same validation as [`WeightedGraph::new`] except, optionally, connectivity.
    pub(crate) fn assemble(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
        terminals: Vec<VertexId>,
        require_connected: bool,
    ) -> Result<Self> {
        let mut collapsed: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            if !(w > 0.0) {
                return Err(SprError::NonPositiveWeight { u, v, w });
            }
            if !w.is_finite() {
                return Err(SprError::InvalidParameter(format!(
                    "edge ({u}, {v}) has non-finite weight"
                )));
            }
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(SprError::VertexOutOfRange { vertex: x, vertex_count });
                }
            }
            if u == v {
                return Err(SprError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            collapsed
                .entry(key)
                .and_modify(|cur| *cur = cur.min(w))
                .or_insert(w);
        }

        if terminals.is_empty() {
            return Err(SprError::NoTerminals);
        }
        let mut terminal_index = vec![None; vertex_count];
        for (i, &t) in terminals.iter().enumerate() {
            if t >= vertex_count {
                return Err(SprError::TerminalOutOfRange { terminal: t, vertex_count });
            }
            if terminal_index[t].is_some() {
                return Err(SprError::DuplicateTerminal { terminal: t });
            }
            terminal_index[t] = Some(i);
        }

        let edges: Vec<Edge> = collapsed
            .into_iter()
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();

        let mut degree = vec![0usize; vertex_count];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let placeholder = Neighbor { vertex: 0, weight: 0.0, edge: 0 };
        let mut adjacency = vec![placeholder; offsets[vertex_count]];
        for (id, e) in edges.iter().enumerate() {
            adjacency[fill[e.u]] = Neighbor { vertex: e.v, weight: e.w, edge: id };
            fill[e.u] += 1;
            adjacency[fill[e.v]] = Neighbor { vertex: e.u, weight: e.w, edge: id };
            fill[e.v] += 1;
        }
        for v in 0..vertex_count {
            adjacency[offsets[v]..offsets[v + 1]].sort_by_key(|nb| nb.vertex);
        }

        let graph = WeightedGraph {
            vertex_count,
            edges,
            offsets,
            adjacency,
            terminals,
            terminal_index,
        };
        if require_connected {
            if let Some(unreachable) = graph.first_unreachable() {
                return Err(SprError::DisconnectedGraph { unreachable });
            }
        }
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<VertexId> {
        if self.vertex_count == 0 {
            return None;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for nb in self.neighbors(u) {
                if !seen[nb.vertex] {
                    seen[nb.vertex] = true;
                    queue.push_back(nb.vertex);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v`, sorted by vertex id.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[Neighbor] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn terminal(&self, index: usize) -> VertexId {
        self.terminals[index]
    }

    /// Position of `v` in the terminal list, if it is a terminal.
    #[inline]
    pub fn terminal_index(&self, v: VertexId) -> Option<usize> {
        self.terminal_index[v]
    }

    #[inline]
    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminal_index[v].is_some()
    }

    pub fn steiner_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count).filter(|&v| !self.is_terminal(v))
    }

    /// Weight of the edge `{u, v}`, if present.
    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        let nbs = self.neighbors(u);
        nbs.binary_search_by_key(&v, |nb| nb.vertex)
            .ok()
            .map(|i| nbs[i].weight)
    }

    /// A copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<WeightedGraph> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(SprError::InvalidParameter(format!("scale factor {factor}")));
        }
        WeightedGraph::assemble(
            self.vertex_count,
            self.edges.iter().map(|e| (e.u, e.v, e.w * factor)),
            self.terminals.clone(),
            false,
        )
    }

    /// A copy with the terminals listed in a different order.
    pub fn with_terminal_order(&self, terminals: Vec<VertexId>) -> Result<WeightedGraph> {
        WeightedGraph::assemble(
            self.vertex_count,
            self.edges.iter().map(|e| (e.u, e.v, e.w)),
            terminals,
            false,
        )
    }
}
