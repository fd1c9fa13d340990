//! Instance generators.
//!
//! Numbering is fixed so traces are comparable across runs: terminals come
//! first, then spine vertices, then extras.
//!
//! * caterpillar: `t_j = j`, `v_j = k + j` for `j in 0..k`.
//! * bg lower bound: same layout plus the extra leaf `2k` hanging off `t_1`.
//! * binary tree: the `2^d` leaves are `0..2^d`, internal vertices follow in
//!   breadth-first order with the root at `2^d`.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SprError};
use crate::graph::{VertexId, WeightedGraph};
use crate::sampling::default_delta;

fn invalid(msg: impl Into<String>) -> SprError {
    SprError::InvalidParameter(msg.into())
}

/// Spine `v_1..v_k` joined by `epsilon` edges, terminal `t_j` hanging off
/// `v_j` by a unit edge.
pub fn gen_caterpillar(k: usize, epsilon: f64) -> Result<WeightedGraph> {
    caterpillar_with(k, 1.0, epsilon)
}

/// The caterpillar with pendant weight `2 - epsilon`, spine weight
/// `2 epsilon`, and one extra unit-weight Steiner leaf attached to `t_1`, so
/// the closest terminal/Steiner pair is at distance exactly 1.
pub fn gen_bg_lower_bound(k: usize, epsilon: f64) -> Result<WeightedGraph> {
    if !(epsilon > 0.0 && epsilon < 2.0) {
        return Err(invalid(format!("epsilon must lie in (0, 2), got {epsilon}")));
    }
    check_k(k)?;
    let mut edges = caterpillar_edges(k, 2.0 - epsilon, 2.0 * epsilon);
    edges.push((0, 2 * k, 1.0));
    WeightedGraph::new(2 * k + 1, edges, (0..k).collect())
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(invalid(format!("need k >= 2, got {k}")));
    }
    Ok(())
}

fn caterpillar_edges(k: usize, pendant: f64, spine: f64) -> Vec<(VertexId, VertexId, f64)> {
    let mut edges: Vec<_> = (0..k).map(|j| (j, k + j, pendant)).collect();
    edges.extend((0..k - 1).map(|j| (k + j, k + j + 1, spine)));
    edges
}

fn caterpillar_with(k: usize, pendant: f64, epsilon: f64) -> Result<WeightedGraph> {
    check_k(k)?;
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    WeightedGraph::new(2 * k, caterpillar_edges(k, pendant, epsilon), (0..k).collect())
}

/// `14 delta` with `delta = 1/(20 ln k)`: the caterpillar spacing at which
/// noisy Voronoi is forced to logarithmic distortion.
pub fn log_regime_epsilon(k: usize) -> Result<f64> {
    Ok(14.0 * default_delta(k)?)
}

/// `c / sqrt(ln k)`, the spacing used against ball growing.
pub fn bg_epsilon(k: usize, c: f64) -> Result<f64> {
    check_k(k)?;
    Ok(c / (k as f64).ln().sqrt())
}

/// Complete binary tree of the given depth with unit weights; the leaves
/// are the terminals.
pub fn gen_binary_tree(depth: u32) -> Result<WeightedGraph> {
    if depth < 1 || depth > 24 {
        return Err(invalid(format!("depth must lie in 1..=24, got {depth}")));
    }
    let leaves = 1usize << depth;
    let n = 2 * leaves - 1;
    // heap index h in 1..=n, root 1, children 2h and 2h + 1
    let id = |h: usize| if h >= leaves { h - leaves } else { leaves + h - 1 };
    let edges: Vec<_> = (2..=n).map(|h| (id(h / 2), id(h), 1.0)).collect();
    WeightedGraph::new(n, edges, (0..leaves).collect())
}

/// Random connected graph: a random recursive spanning tree plus `m - n + 1`
/// distinct extra edges, weights uniform in `weight_range`, and `k` distinct
/// random terminals listed in increasing id order.
pub fn gen_random(
    n: usize,
    m: usize,
    k: usize,
    seed: u64,
    weight_range: (f64, f64),
) -> Result<WeightedGraph> {
    let (lo, hi) = weight_range;
    if n < 1 || k < 1 || k > n {
        return Err(invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    if m + 1 < n {
        return Err(invalid(format!("m = {m} cannot connect {n} vertices")));
    }
    let max_edges = n * (n - 1) / 2;
    if m > max_edges {
        return Err(invalid(format!("m = {m} exceeds the {max_edges} possible edges")));
    }
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(invalid(format!("weight range [{lo}, {hi}] must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = |rng: &mut ChaCha8Rng| if lo == hi { lo } else { rng.gen_range(lo..=hi) };

    let order = sample(&mut rng, n, n).into_vec();
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let (a, b) = (order[i], order[rng.gen_range(0..i)]);
        seen.insert((a.min(b), a.max(b)));
        let w = weight(&mut rng);
        edges.push((a, b, w));
    }
    while edges.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            continue;
        }
        let w = weight(&mut rng);
        edges.push((a, b, w));
    }
    let mut terminals = sample(&mut rng, n, k).into_vec();
    terminals.sort_unstable();
    WeightedGraph::new(n, edges, terminals)
}

/// A generator family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    Caterpillar { k: usize, epsilon: f64 },
    BgLowerBound { k: usize, epsilon: f64 },
    BinaryTree { depth: u32 },
    Random { n: usize, m: usize, k: usize, seed: u64, weight_range: (f64, f64) },
}

impl InstanceSpec {
    pub fn build(&self) -> Result<WeightedGraph> {
        match *self {
            InstanceSpec::Caterpillar { k, epsilon } => gen_caterpillar(k, epsilon),
            InstanceSpec::BgLowerBound { k, epsilon } => gen_bg_lower_bound(k, epsilon),
            InstanceSpec::BinaryTree { depth } => gen_binary_tree(depth),
            InstanceSpec::Random { n, m, k, seed, weight_range } => {
                gen_random(n, m, k, seed, weight_range)
            }
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            InstanceSpec::Caterpillar { .. } => "caterpillar",
            InstanceSpec::BgLowerBound { .. } => "bg-lb",
            InstanceSpec::BinaryTree { .. } => "binary-tree",
            InstanceSpec::Random { .. } => "random",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{dijkstra, min_terminal_pair_distance, terminal_distances};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn caterpillar_distances() {
        let g = gen_caterpillar(3, 0.5).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(dijkstra(&g, 0).get(2), 3.0);

        let (k, eps) = (5, 0.1);
        let g = gen_caterpillar(k, eps).unwrap();
        assert!(rel(dijkstra(&g, 0).get(4), 2.0 + 4.0 * eps) < 1e-12);
        let d = terminal_distances(&g);
        for j in 0..k {
            assert_eq!(d.get(j), 0.0);
            assert_eq!(d.get(k + j), 1.0);
        }
        assert!(rel(min_terminal_pair_distance(&g).unwrap(), 2.0 + eps) < 1e-12);
        for i in 0..k {
            let di = dijkstra(&g, i);
            for j in 0..k {
                let want = if i == j { 0.0 } else { 2.0 + (i.abs_diff(j) as f64) * eps };
                assert!(rel(di.get(j), want) < 1e-12 || want == 0.0 && di.get(j) == 0.0);
            }
        }
    }

    #[test]
    fn bg_lower_bound_distances() {
        let (k, eps) = (6, 0.3);
        let g = gen_bg_lower_bound(k, eps).unwrap();
        assert_eq!(g.vertex_count(), 2 * k + 1);
        for jp in 0..k {
            let d = dijkstra(&g, jp);
            for j in 0..k {
                let want = if j == jp {
                    2.0 - eps
                } else {
                    2.0 + (2.0 * j.abs_diff(jp) as f64 - 1.0) * eps
                };
                assert!(rel(d.get(k + j), want) < 1e-12, "t_{jp} -> v_{j}");
            }
        }
        let nearest = terminal_distances(&g);
        let min_steiner = g.steiner_vertices().map(|v| nearest.get(v)).fold(f64::INFINITY, f64::min);
        assert_eq!(min_steiner, 1.0);
        assert!(gen_bg_lower_bound(4, 2.0).is_err());
        assert!(gen_bg_lower_bound(4, 0.0).is_err());
    }

    #[test]
    fn binary_tree_shape() {
        let g = gen_binary_tree(1).unwrap();
        assert_eq!((g.vertex_count(), g.terminal_count()), (3, 2));
        let g = gen_binary_tree(4).unwrap();
        assert_eq!(g.vertex_count(), 31);
        assert_eq!(g.terminal_count(), 16);
        for t in 0..16 {
            assert_eq!(g.degree(t), 1);
        }
        // siblings share a parent; opposite halves meet at the root
        assert_eq!(dijkstra(&g, 0).get(1), 2.0);
        assert_eq!(dijkstra(&g, 0).get(15), 8.0);
        assert!(gen_binary_tree(0).is_err());
    }

    #[test]
    fn random_graphs() {
        let tree = gen_random(10, 9, 3, 1, (1.0, 2.0)).unwrap();
        assert_eq!(tree.edge_count(), 9);
        let a = gen_random(200, 1000, 16, 7, (1.0, 10.0)).unwrap();
        let b = gen_random(200, 1000, 16, 7, (1.0, 10.0)).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.terminals(), b.terminals());
        assert_eq!(a.edge_count(), 1000);
        assert!(a.edges().iter().all(|e| (1.0..=10.0).contains(&e.w)));
        assert!(gen_random(10, 8, 3, 1, (1.0, 2.0)).is_err());
        assert!(gen_random(10, 9, 11, 1, (1.0, 2.0)).is_err());
        assert!(gen_random(4, 7, 2, 1, (1.0, 2.0)).is_err());
        let complete = gen_random(5, 10, 2, 3, (1.0, 1.0)).unwrap();
        assert_eq!(complete.edge_count(), 10);
    }

    #[test]
    fn presets() {
        let eps = log_regime_epsilon(64).unwrap();
        assert!(rel(eps, 14.0 / (20.0 * 64f64.ln())) < 1e-15);
        assert!(rel(bg_epsilon(256, 1.0).unwrap(), 1.0 / 256f64.ln().sqrt()) < 1e-15);
        let instance = InstanceSpec::Caterpillar { k: 4, epsilon: 0.1 };
        assert_eq!(instance.build().unwrap().vertex_count(), 8);
        assert_eq!(instance.family(), "caterpillar");
    }
}
