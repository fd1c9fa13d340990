//! The heap-based algorithm against the reference on one random graph with
//! shared draws. The heap version admits by in-cluster distance rather than
//! global distance, so the clusters can differ slightly. Its single-crossing
//! weights match a brute-force search and its heap counters stay within
//! `min(2m, nk)`.

use std::time::Instant;

use spr::fast::{fast_noisy_voronoi, FastConfig};
use spr::minor::single_crossing_distance;
use spr::noisy_voronoi::{noisy_voronoi, RunConfig};
use spr::{gen_random, RandomPlan};

fn main() -> spr::Result<()> {
    let (n, m, k) = (5_000, 20_000, 70);
    let g = gen_random(n, m, k, 11, (1.0, 10.0))?;
    let plan = RandomPlan::new(k, 5)?;

    let start = Instant::now();
    let slow = noisy_voronoi(&g, &plan, RunConfig::default())?;
    let slow_time = start.elapsed();
    let start = Instant::now();
    let fast = fast_noisy_voronoi(&g, &plan, FastConfig::default())?;
    let fast_time = start.elapsed();

    println!("n = {n}, m = {m}, k = {k}");
    println!("reference {slow_time:?}, heap-based {fast_time:?}");
    let agree = (0..n).filter(|&v| slow.partition.cluster_of(v) == fast.partition.cluster_of(v)).count();
    println!("vertices placed in the same cluster: {agree} of {n}");
    let c = fast.counters;
    println!(
        "heap: {} insertions, {} decrease-keys, {} extractions (bound {})",
        c.insertions,
        c.decrease_keys,
        c.extractions,
        (2 * m).min(n * k)
    );
    println!("extraction-key order violations: {}", fast.monotonicity_violations);

    let mut max_err: f64 = 0.0;
    for e in fast.minor.edges.iter().take(25) {
        let p = &fast.partition;
        let brute = single_crossing_distance(&g, p.members(e.i), p.members(e.j), g.terminal(e.i), g.terminal(e.j))
            .expect("adjacent clusters");
        max_err = max_err.max((e.w - brute).abs() / brute);
    }
    println!("largest relative gap to brute-force single-crossing distance: {max_err:e}");
    Ok(())
}
