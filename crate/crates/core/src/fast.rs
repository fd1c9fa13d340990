//! Fast noisy Voronoi: the frontier is an addressable min-heap keyed by the
//! in-cluster distance `ℓ_v = d_{G[V_j ∪ {v}]}(v, t_j)`, a vertex is admitted
//! iff `ℓ_v <= R_j * D(v)`, and minor weights come from the extraction keys
//! in a single pass over the edges.
//!
//! Within one cluster the extraction keys are non-decreasing; every run
//! counts violations of this so callers can assert there are none.

use serde::Serialize;

use crate::error::{Result, SprError};
use crate::graph::{DistanceMap, DistanceOracle, VertexId, WeightedGraph};
use crate::heap::{HeapCounters, IndexedMinHeap};
use crate::minor::{induce_single_crossing_minor, InducedMinor, WeightMode};
use crate::noisy_voronoi::{
    finish_assignment, processing_order, single_cluster, RoundTrace, RunConfig, Stamps, DENIED,
    FREE, MEMBER, QUEUED,
};
use crate::partition::TerminalPartition;
use crate::sampling::{magnitude, RandomPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FastConfig {
    pub shuffle_terminals: bool,
    /// Keep every round's sequence of extraction keys.
    pub record_extractions: bool,
}

/// A cluster grown by [`fast_create_cluster`].
#[derive(Debug, Clone, PartialEq)]
pub struct FastCluster {
    /// Members in admission order, starting with the terminal.
    pub vertices: Vec<VertexId>,
    /// `ℓ̂_v` for each entry of `vertices`; the terminal has key 0.
    pub keys: Vec<f64>,
    /// Keys of all extractions, admitted or denied, in extraction order.
    pub extraction_keys: Vec<f64>,
    pub frontier_peak: usize,
    pub counters: HeapCounters,
}

impl FastCluster {
    /// Number of places where an extraction key is below its predecessor.
    pub fn monotonicity_violations(&self) -> usize {
        self.extraction_keys.windows(2).filter(|w| w[1] < w[0]).count()
    }
}

/// Per-vertex extraction key `ℓ̂_v` of every clustered vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionRecord {
    pub keys: Vec<Option<f64>>,
}

#[derive(Debug, Clone)]
pub struct FastOutcome {
    pub partition: TerminalPartition,
    pub minor: InducedMinor,
    pub trace: Vec<RoundTrace>,
    pub records: ExtractionRecord,
    pub counters: HeapCounters,
    pub monotonicity_violations: usize,
    /// Per round, in processing order, when requested.
    pub extraction_log: Option<Vec<Vec<f64>>>,
}

pub(crate) struct FastWorkspace {
    heap: IndexedMinHeap,
    stamps: Stamps,
}

impl FastWorkspace {
    pub fn new(n: usize) -> Self {
        FastWorkspace { heap: IndexedMinHeap::new(n), stamps: Stamps::new(n) }
    }
}

fn relax(
    ws: &mut FastWorkspace,
    g: &WeightedGraph,
    unclustered: &[bool],
    u: VertexId,
    lu: f64,
) {
    for nb in g.neighbors(u) {
        let x = nb.vertex;
        if !unclustered[x] {
            continue;
        }
        match ws.stamps.get(x) {
            FREE => {
                ws.stamps.set(x, QUEUED);
                ws.heap.push(x, lu + nb.weight);
            }
            QUEUED => {
                ws.heap.push_or_decrease(x, lu + nb.weight);
            }
            _ => {}
        }
    }
}

pub(crate) fn fast_grow(
    ws: &mut FastWorkspace,
    g: &WeightedGraph,
    unclustered: &[bool],
    t_j: VertexId,
    r_j: f64,
    nearest: &DistanceMap,
) -> FastCluster {
    ws.stamps.reset();
    ws.heap.clear();
    ws.heap.reset_counters();
    ws.stamps.set(t_j, MEMBER);
    let mut vertices = vec![t_j];
    let mut keys = vec![0.0];
    let mut extraction_keys = Vec::new();
    relax(ws, g, unclustered, t_j, 0.0);
    let mut peak = ws.heap.len();
    while let Some((v, lv)) = ws.heap.pop() {
        extraction_keys.push(lv);
        if lv <= r_j * nearest.get(v) {
            ws.stamps.set(v, MEMBER);
            vertices.push(v);
            keys.push(lv);
            relax(ws, g, unclustered, v, lv);
            peak = peak.max(ws.heap.len());
        } else {
            ws.stamps.set(v, DENIED);
        }
    }
    FastCluster { vertices, keys, extraction_keys, frontier_peak: peak, counters: ws.heap.counters() }
}

/// Dijkstra-like growth of one cluster from `t_j` over `unclustered`.
pub fn fast_create_cluster(
    g: &WeightedGraph,
    unclustered: &[bool],
    t_j: VertexId,
    r_j: f64,
    nearest: &DistanceMap,
) -> FastCluster {
    fast_grow(&mut FastWorkspace::new(g.vertex_count()), g, unclustered, t_j, r_j, nearest)
}

/// Single-crossing minor from the extraction keys, in one edge scan.
pub fn minor_from_extraction(
    g: &WeightedGraph,
    partition: &TerminalPartition,
    records: &ExtractionRecord,
) -> Result<InducedMinor> {
    if records.keys.len() != g.vertex_count() {
        return Err(SprError::IncompleteRecords(records.keys.len().min(g.vertex_count())));
    }
    let mut dist = Vec::with_capacity(g.vertex_count());
    for (v, key) in records.keys.iter().enumerate() {
        match key {
            Some(k) if partition.cluster_of(v).is_some() => dist.push(*k),
            _ => return Err(SprError::IncompleteRecords(v)),
        }
    }
    Ok(induce_single_crossing_minor(g, partition, &dist))
}

pub fn fast_noisy_voronoi(g: &WeightedGraph, plan: &RandomPlan, config: FastConfig) -> Result<FastOutcome> {
    fast_noisy_voronoi_with(&DistanceOracle::new(g), plan, config)
}

/// As [`fast_noisy_voronoi`], sharing `D(·)` through `oracle`. Only the
/// multi-source map is used; no per-terminal runs are made.
pub fn fast_noisy_voronoi_with(
    oracle: &DistanceOracle<'_>,
    plan: &RandomPlan,
    config: FastConfig,
) -> Result<FastOutcome> {
    let g = oracle.graph();
    let n = g.vertex_count();
    let k = g.terminal_count();
    if k == 1 {
        let (partition, minor) = single_cluster(g, WeightMode::SingleCrossing);
        let records = ExtractionRecord { keys: vec![None; n] };
        return Ok(FastOutcome {
            partition,
            minor,
            trace: Vec::new(),
            records,
            counters: HeapCounters::default(),
            monotonicity_violations: 0,
            extraction_log: config.record_extractions.then(Vec::new),
        });
    }
    plan.validate(k)?;
    let nearest = oracle.nearest_terminal();
    let mut unclustered: Vec<bool> = (0..n).map(|v| !g.is_terminal(v)).collect();
    let mut assignment: Vec<Option<usize>> = (0..n).map(|v| g.terminal_index(v)).collect();
    let mut keys: Vec<Option<f64>> = vec![None; n];
    let mut ws = FastWorkspace::new(n);
    let mut trace = Vec::with_capacity(k);
    let mut counters = HeapCounters::default();
    let mut violations = 0;
    let mut log = config.record_extractions.then(|| Vec::with_capacity(k));

    let run_config = RunConfig { shuffle_terminals: config.shuffle_terminals, ..RunConfig::default() };
    for j in processing_order(k, plan, &run_config) {
        let gj = plan.geometric_draw(j)?;
        let r = magnitude(gj, plan.delta);
        let cluster = fast_grow(&mut ws, g, &unclustered, g.terminal(j), r, nearest);
        for (&v, &key) in cluster.vertices.iter().zip(&cluster.keys) {
            unclustered[v] = false;
            assignment[v] = Some(j);
            keys[v] = Some(key);
        }
        violations += cluster.monotonicity_violations();
        counters.add(&cluster.counters);
        trace.push(RoundTrace {
            terminal: j,
            g: gj,
            magnitude: r,
            cluster_size: cluster.vertices.len(),
            frontier_peak: cluster.frontier_peak,
            heap: Some(cluster.counters),
        });
        if let Some(log) = log.as_mut() {
            log.push(cluster.extraction_keys);
        }
    }
    let partition = finish_assignment(k, assignment)?;
    let records = ExtractionRecord { keys };
    let minor = minor_from_extraction(g, &partition, &records)?;
    Ok(FastOutcome {
        partition,
        minor,
        trace,
        records,
        counters,
        monotonicity_violations: violations,
        extraction_log: log,
    })
}
