//! Splitting heavy edges into chains of light ones does not change the
//! induced minor when the geometric draws are pinned.

use spr::diagnostics::subdivision_constant;
use spr::fast::{fast_noisy_voronoi, FastConfig};
use spr::graph::{min_terminal_pair_distance, subdivide_edges};
use spr::noisy_voronoi::{noisy_voronoi, RunConfig};
use spr::{gen_random, RandomPlan};

fn main() -> spr::Result<()> {
    let k = 5;
    let g = gen_random(80, 200, k, 3, (1.0, 2.0))?;
    let plan = RandomPlan::new(k, 9)?;
    let draws = plan.geometric_draws(k)?;
    let plan = plan.with_draws(draws.clone())?;

    let threshold = subdivision_constant(plan.delta) * min_terminal_pair_distance(&g)?;
    let (h, records) = subdivide_edges(&g, threshold)?;
    println!("draws {draws:?}");
    println!(
        "threshold {threshold:.5}: {} edges split, {} -> {} vertices",
        records.len(),
        g.vertex_count(),
        h.vertex_count()
    );

    let a = noisy_voronoi(&g, &plan, RunConfig::default())?;
    let b = noisy_voronoi(&h, &plan, RunConfig::default())?;
    println!("reference minors agree: {}", a.minor.approx_eq(&b.minor, 1e-9));
    println!(
        "partition restricted to original vertices agrees: {}",
        b.partition.restrict(g.vertex_count()) == a.partition
    );

    let a = fast_noisy_voronoi(&g, &plan, FastConfig::default())?;
    let b = fast_noisy_voronoi(&h, &plan, FastConfig::default())?;
    println!("single-crossing minors agree: {}", a.minor.approx_eq(&b.minor, 1e-9));
    Ok(())
}
