//! Invariants over random instances.

use proptest::prelude::*;

use spr::fast::{fast_noisy_voronoi, FastConfig};
use spr::minor::single_crossing_distance;
use spr::noisy_voronoi::{noisy_voronoi, FrontierPolicy, RunConfig};
use spr::{distortion, gen_random, validate_partition, Algorithm, RandomPlan, RunOptions, Runner, WeightedGraph};

fn instance() -> impl Strategy<Value = WeightedGraph> {
    (6usize..60, 0usize..80, 2usize..6, any::<u64>()).prop_map(|(n, extra, k, seed)| {
        let m = (n - 1 + extra).min(n * (n - 1) / 2);
        gen_random(n, m, k.min(n), seed, (0.5, 4.0)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_algorithm_partitions_without_contraction(g in instance(), seed in any::<u64>()) {
        let runner = Runner::new(&g);
        for algo in Algorithm::ALL {
            let out = runner.run(algo, seed, &RunOptions::default()).unwrap();
            prop_assert_eq!(validate_partition(&g, &out.partition), Ok(()));
            let report = distortion(&g, &out.minor).unwrap();
            prop_assert!(report.min_ratio() >= 1.0 - 1e-9);
            prop_assert!(report.worst >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn frontier_order_does_not_matter(g in instance(), seed in any::<u64>()) {
        let plan = RandomPlan::new(g.terminal_count(), seed).unwrap();
        let fifo = noisy_voronoi(&g, &plan, RunConfig::default()).unwrap();
        let lifo = noisy_voronoi(&g, &plan, RunConfig { frontier: FrontierPolicy::Lifo, ..RunConfig::default() }).unwrap();
        prop_assert_eq!(fifo.partition, lifo.partition);
    }

    #[test]
    fn fast_weights_are_single_crossing_distances(g in instance(), seed in any::<u64>()) {
        let plan = RandomPlan::new(g.terminal_count(), seed).unwrap();
        let out = fast_noisy_voronoi(&g, &plan, FastConfig { record_extractions: true, ..FastConfig::default() }).unwrap();
        prop_assert_eq!(out.monotonicity_violations, 0);
        for keys in out.extraction_log.as_ref().unwrap() {
            prop_assert!(keys.windows(2).all(|w| w[0] <= w[1]));
        }
        let p = &out.partition;
        for e in &out.minor.edges {
            let brute = single_crossing_distance(&g, p.members(e.i), p.members(e.j), g.terminal(e.i), g.terminal(e.j)).unwrap();
            prop_assert!((e.w - brute).abs() <= 1e-9 * brute);
        }
        let c = out.counters;
        prop_assert!(c.extractions as usize <= (2 * g.edge_count()).min(g.vertex_count() * g.terminal_count()));
    }

    #[test]
    fn larger_magnitudes_only_grow_the_first_cluster(g in instance(), lo in 1u32..5, step in 1u32..6) {
        let k = g.terminal_count();
        let pinned = |g0: u32| {
            let mut draws = vec![1; k];
            draws[0] = g0;
            RandomPlan::new(k, 0).unwrap().with_draws(draws).unwrap()
        };
        let small = noisy_voronoi(&g, &pinned(lo), RunConfig::default()).unwrap();
        let large = noisy_voronoi(&g, &pinned(lo + step), RunConfig::default()).unwrap();
        for &v in small.partition.members(0) {
            prop_assert_eq!(large.partition.cluster_of(v), Some(0));
        }
    }
}
