//! Greedy interval partition of a terminal-pair shortest path: each interval
//! is short relative to its distance from the terminals, and the external
//! lengths add up to between one and two path lengths.

use spr::diagnostics::{interval_partition, C_INT};
use spr::gen_random;
use spr::sampling::default_delta;

fn main() -> spr::Result<()> {
    let k = 6;
    let g = gen_random(300, 900, k, 21, (1.0, 2.0))?;
    let delta = default_delta(k)?;
    let part = interval_partition(&g, g.terminal(0), g.terminal(k - 1), C_INT, delta)?;

    println!("path of {} vertices, length {:.4}", part.path.len(), part.length());
    println!("interval      L        c_int*delta*D  L+");
    for q in &part.intervals {
        println!(
            "[{:>3}, {:>3}]  {:<8.5} {:<14.5} {:.5}",
            q.start,
            q.end,
            q.internal_length,
            C_INT * delta * q.distance,
            q.external_length
        );
    }
    println!(
        "sum L+ = {:.4} in [{:.4}, {:.4}]: {}",
        part.external_total(),
        part.length(),
        2.0 * part.length(),
        part.external_total_in_range(1e-12)
    );
    println!("per-interval bounds hold: {}", part.satisfies_bounds());
    for w in &part.warnings {
        println!("warning: {w:?}");
    }
    Ok(())
}
