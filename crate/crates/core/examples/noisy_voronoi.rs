//! One run of reference noisy Voronoi on a small caterpillar, printing the
//! per-round magnitudes, the clusters and the induced minor.

use spr::noisy_voronoi::{noisy_voronoi, RunConfig};
use spr::{distortion, gen_caterpillar, RandomPlan};

fn main() -> spr::Result<()> {
    let k = 12;
    let g = gen_caterpillar(k, 0.05)?;
    let plan = RandomPlan::new(k, 2024)?;
    println!("delta = {:.5}, p = {}", plan.delta, plan.p);

    let out = noisy_voronoi(&g, &plan, RunConfig::default())?;
    println!("terminal  g   R         |V_j|");
    for r in &out.trace {
        println!("{:>8}  {:<3} {:<9.6} {}", r.terminal, r.g, r.magnitude, r.cluster_size);
    }
    for j in 0..k {
        println!("cluster {j}: {:?}", out.partition.members(j));
    }
    for e in &out.minor.edges {
        println!("minor edge ({}, {}) weight {}", e.i, e.j, e.w);
    }
    let report = distortion(&g, &out.minor)?;
    println!("worst distortion {:.4} on pair {:?}", report.worst, report.argmax_pair);
    Ok(())
}
