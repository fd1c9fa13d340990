//! Exponential ball growing on its lower-bound family, next to noisy
//! Voronoi on the same graphs.

use spr::diagnostics::worst_distortion_trials;
use spr::instances::bg_epsilon;
use spr::runner::RunTrace;
use spr::{gen_bg_lower_bound, Algorithm, RunOptions, Runner};

fn main() -> spr::Result<()> {
    let trials = 20;
    println!("k      eps     ball mean   noisy mean  rounds(seed 0)");
    for k in [16, 64, 256] {
        let g = gen_bg_lower_bound(k, bg_epsilon(k, 1.0)?)?;
        let runner = Runner::new(&g);
        let opts = RunOptions { record_trace: true, ..RunOptions::default() };
        let ball = worst_distortion_trials(&runner, Algorithm::Ball, trials, 0, &opts)?;
        let noisy = worst_distortion_trials(&runner, Algorithm::Noisy, trials, 0, &opts)?;
        let one = runner.run(Algorithm::Ball, 0, &opts)?;
        let rounds = match &one.trace {
            RunTrace::Steps(steps) => steps.last().map_or(0, |s| s.round + 1),
            _ => 0,
        };
        println!(
            "{k:<6} {:<7.4} {:<11.4} {:<11.4} {rounds}",
            bg_epsilon(k, 1.0)?,
            ball.mean,
            noisy.mean
        );
    }
    Ok(())
}
