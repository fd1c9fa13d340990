//! Pilot run behind the constants of the logarithmic-growth acceptance
//! checks: mean worst distortion divided by `ln k` on the caterpillar
//! (noisy Voronoi) and on the ball-growing lower-bound family. Uses seeds
//! disjoint from the ones the acceptance suite draws.

use std::time::Instant;

use spr::diagnostics::worst_distortion_trials;
use spr::instances::{bg_epsilon, log_regime_epsilon};
use spr::{gen_bg_lower_bound, gen_caterpillar, Algorithm, RunOptions, Runner};

const PILOT_SEED: u64 = 1_000_000;

fn main() -> spr::Result<()> {
    let opts = RunOptions::default();
    println!("family        k      trials  mean      stderr   mean/ln k  seconds");
    for k in [64, 256, 1024] {
        let g = gen_caterpillar(k, log_regime_epsilon(k)?)?;
        let start = Instant::now();
        let s = worst_distortion_trials(&Runner::new(&g), Algorithm::Noisy, 50, PILOT_SEED, &opts)?;
        report("caterpillar", k, &s, start);
    }
    for k in [16, 256, 4096] {
        let g = gen_bg_lower_bound(k, bg_epsilon(k, 1.0)?)?;
        let start = Instant::now();
        let s = worst_distortion_trials(&Runner::new(&g), Algorithm::Ball, 10, PILOT_SEED, &opts)?;
        report("bg-lb", k, &s, start);
    }
    Ok(())
}

fn report(family: &str, k: usize, s: &spr::diagnostics::WorstDistortionSummary, start: Instant) {
    println!(
        "{family:<13} {k:<6} {:<7} {:<9.4} {:<8.4} {:<10.4} {:.1}",
        s.trials,
        s.mean,
        s.stderr,
        s.mean / (k as f64).ln(),
        start.elapsed().as_secs_f64()
    );
}
