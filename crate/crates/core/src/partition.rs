//! Terminal partitions: every vertex in exactly one cluster, cluster `i`
//! contains terminal `t_i`, and every cluster induces a connected subgraph.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{VertexId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionViolation {
    #[error("partition covers {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("partition has {found} clusters, graph has {expected} terminals")]
    ClusterCountMismatch { expected: usize, found: usize },
    #[error("vertex {0} is not assigned to any cluster")]
    UnassignedVertex(VertexId),
    #[error("vertex {vertex} is assigned to more than one cluster")]
    MultiplyAssigned { vertex: VertexId },
    #[error("terminal t_{terminal} lies in cluster {found:?}")]
    TerminalInWrongCluster { terminal: usize, found: Option<usize> },
    #[error("cluster {0} does not induce a connected subgraph")]
    DisconnectedCluster(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalPartition {
    assignment: Vec<Option<usize>>,
    members: Vec<Vec<VertexId>>,
}

impl TerminalPartition {
    /// Builds a partition from a per-vertex cluster index. Out-of-range
    /// indices are treated as unassigned.
    pub fn from_assignment(cluster_count: usize, assignment: Vec<Option<usize>>) -> Self {
        let mut members = vec![Vec::new(); cluster_count];
        let assignment: Vec<Option<usize>> = assignment
            .into_iter()
            .map(|c| c.filter(|&c| c < cluster_count))
            .collect();
        for (v, c) in assignment.iter().enumerate() {
            if let Some(c) = *c {
                members[c].push(v);
            }
        }
        TerminalPartition { assignment, members }
    }

    pub fn from_clusters(
        vertex_count: usize,
        clusters: Vec<Vec<VertexId>>,
    ) -> Result<Self, PartitionViolation> {
        let mut assignment = vec![None; vertex_count];
        for (c, cluster) in clusters.iter().enumerate() {
            for &v in cluster {
                if v >= vertex_count {
                    return Err(PartitionViolation::SizeMismatch {
                        expected: vertex_count,
                        found: v + 1,
                    });
                }
                if assignment[v].is_some() {
                    return Err(PartitionViolation::MultiplyAssigned { vertex: v });
                }
                assignment[v] = Some(c);
            }
        }
        Ok(Self::from_assignment(clusters.len(), assignment))
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn cluster_of(&self, v: VertexId) -> Option<usize> {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// Members of cluster `i`, sorted by vertex id.
    pub fn members(&self, i: usize) -> &[VertexId] {
        &self.members[i]
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// The partition restricted to vertices `0..vertex_count`; used to map a
    /// partition of a subdivided graph back onto the original vertices.
    pub fn restrict(&self, vertex_count: usize) -> TerminalPartition {
        Self::from_assignment(
            self.cluster_count(),
            self.assignment[..vertex_count].to_vec(),
        )
    }
}

/// Checks coverage, terminal membership and per-cluster connectivity, and
/// reports the first violation found.
pub fn validate_partition(
    g: &WeightedGraph,
    p: &TerminalPartition,
) -> Result<(), PartitionViolation> {
    let n = g.vertex_count();
    let k = g.terminal_count();
    if p.vertex_count() != n {
        return Err(PartitionViolation::SizeMismatch { expected: n, found: p.vertex_count() });
    }
    if p.cluster_count() != k {
        return Err(PartitionViolation::ClusterCountMismatch {
            expected: k,
            found: p.cluster_count(),
        });
    }
    if let Some(v) = (0..n).find(|&v| p.cluster_of(v).is_none()) {
        return Err(PartitionViolation::UnassignedVertex(v));
    }
    for (i, &t) in g.terminals().iter().enumerate() {
        if p.cluster_of(t) != Some(i) {
            return Err(PartitionViolation::TerminalInWrongCluster {
                terminal: i,
                found: p.cluster_of(t),
            });
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for i in 0..k {
        let root = g.terminal(i);
        seen[root] = true;
        queue.push_back(root);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for nb in g.neighbors(u) {
                if !seen[nb.vertex] && p.cluster_of(nb.vertex) == Some(i) {
                    seen[nb.vertex] = true;
                    reached += 1;
                    queue.push_back(nb.vertex);
                }
            }
        }
        if reached != p.members(i).len() {
            return Err(PartitionViolation::DisconnectedCluster(i));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::instances::gen_caterpillar;

    fn path() -> WeightedGraph {
        // t_1 = 0, v = 1, t_2 = 2
        build_graph([(0, 1, 1.0), (1, 2, 1.0)], vec![0, 2]).unwrap()
    }

    #[test]
    fn manifestly_valid() {
        let p = TerminalPartition::from_clusters(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(validate_partition(&path(), &p), Ok(()));
    }

    #[test]
    fn terminal_in_wrong_cluster() {
        let p = TerminalPartition::from_clusters(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert_eq!(
            validate_partition(&path(), &p),
            Err(PartitionViolation::TerminalInWrongCluster { terminal: 1, found: Some(0) })
        );
    }

    #[test]
    fn unassigned_and_disconnected() {
        let p = TerminalPartition::from_clusters(3, vec![vec![0], vec![2]]).unwrap();
        assert_eq!(
            validate_partition(&path(), &p),
            Err(PartitionViolation::UnassignedVertex(1))
        );
        // star: center 0, leaves 1, 2, 3; terminals 1 and 2; cluster {1, 3} skips the center
        let g = build_graph([(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)], vec![1, 2]).unwrap();
        let p = TerminalPartition::from_clusters(4, vec![vec![1, 3], vec![0, 2]]).unwrap();
        assert_eq!(validate_partition(&g, &p), Err(PartitionViolation::DisconnectedCluster(0)));
        assert_eq!(
            TerminalPartition::from_clusters(3, vec![vec![0, 1], vec![1, 2]]),
            Err(PartitionViolation::MultiplyAssigned { vertex: 1 })
        );
    }

    #[test]
    fn caterpillar_voronoi_cells_are_valid() {
        let k = 6;
        let g = gen_caterpillar(k, 0.1).unwrap();
        let clusters: Vec<Vec<_>> = (0..k).map(|j| vec![g.terminal(j), k + j]).collect();
        let p = TerminalPartition::from_clusters(2 * k, clusters).unwrap();
        assert_eq!(validate_partition(&g, &p), Ok(()));
    }
}
