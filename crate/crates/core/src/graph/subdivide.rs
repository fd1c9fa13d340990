use super::{EdgeId, VertexId, WeightedGraph};
use crate::error::{Result, SprError};

/// How one over-threshold edge of the original graph was replaced.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionRecord {
    pub original_edge: EdgeId,
    /// Endpoints of the original edge, `u < v`.
    pub endpoints: (VertexId, VertexId),
    /// Created degree-2 vertices, ordered from `u` towards `v`.
    pub vertices: Vec<VertexId>,
    /// Weights of the chain edges, ordered from `u` towards `v`.
    pub weights: Vec<f64>,
}

impl SubdivisionRecord {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Replaces every edge heavier than `threshold` by a path obtained by
/// repeatedly splitting it in half, so that every resulting edge weighs at
/// most `threshold`. Created vertices are Steiner vertices numbered from
/// `g.vertex_count()` upward in edge order.
pub fn subdivide_edges(
    g: &WeightedGraph,
    threshold: f64,
) -> Result<(WeightedGraph, Vec<SubdivisionRecord>)> {
    if !(threshold > 0.0) {
        return Err(SprError::InvalidParameter(format!(
            "subdivision threshold must be positive, got {threshold}"
        )));
    }
    let mut next = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut records = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if e.w <= threshold {
            edges.push((e.u, e.v, e.w));
            continue;
        }
        let mut pieces: usize = 1;
        let mut piece = e.w;
        while piece > threshold {
            piece /= 2.0;
            pieces *= 2;
        }
        let vertices: Vec<VertexId> = (next..next + pieces - 1).collect();
        next += pieces - 1;
        let mut prev = e.u;
        for &x in vertices.iter().chain(std::iter::once(&e.v)) {
            edges.push((prev, x, piece));
            prev = x;
        }
        records.push(SubdivisionRecord {
            original_edge: id,
            endpoints: (e.u, e.v),
            vertices,
            weights: vec![piece; pieces],
        });
    }
    let sub = WeightedGraph::assemble(next, edges, g.terminals().to_vec(), false)?;
    Ok((sub, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, TerminalMetric};

    #[test]
    fn boundary_weight_is_not_split() {
        let g = build_graph([(0, 1, 4.0)], vec![0, 1]).unwrap();
        let (sub, records) = subdivide_edges(&g, 4.0).unwrap();
        assert!(records.is_empty());
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_weight(0, 1), Some(4.0));
    }

    #[test]
    fn two_halving_levels() {
        let g = build_graph([(0, 1, 4.0)], vec![0, 1]).unwrap();
        let (sub, records) = subdivide_edges(&g, 1.2).unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(r.weights, vec![1.0; 4]);
        assert_eq!(r.vertices, vec![2, 3, 4]);
        assert_eq!(r.total_weight(), 4.0);
        assert_eq!(sub.vertex_count(), 5);
        assert_eq!(sub.edge_count(), 4);
        for &v in &r.vertices {
            assert_eq!(sub.degree(v), 2);
        }
        assert_eq!(TerminalMetric::compute(&sub).get(0, 1), 4.0);
    }

    #[test]
    fn rejects_non_positive_threshold() {
        let g = build_graph([(0, 1, 4.0)], vec![0, 1]).unwrap();
        assert!(subdivide_edges(&g, 0.0).is_err());
    }
}
