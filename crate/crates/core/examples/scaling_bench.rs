//! Wall time of the heap-based algorithm as the edge count doubles.
//! Build with `--release` for meaningful numbers.

use spr::cli::bench_ladder;
use spr::Algorithm;

fn main() -> spr::Result<()> {
    let sizes = [10_000, 20_000, 40_000, 80_000];
    println!("m        n       k    seconds    ratio  extractions  bound");
    for r in bench_ladder(&sizes, Algorithm::Fast, 0, 3)? {
        println!(
            "{:<8} {:<7} {:<4} {:<10.5} {:<6} {:<12} {}",
            r.m,
            r.n,
            r.k,
            r.seconds,
            r.ratio.map_or("-".into(), |x| format!("{x:.2}")),
            r.extractions.unwrap_or(0),
            r.extraction_bound
        );
    }
    Ok(())
}
