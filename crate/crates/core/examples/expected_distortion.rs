//! Expected distortion of noisy Voronoi on caterpillars of growing size,
//! normalized by `ln k`, plus the per-pair estimate on a small instance.

use spr::diagnostics::{expected_distortion, worst_distortion_trials};
use spr::instances::log_regime_epsilon;
use spr::{gen_caterpillar, Algorithm, RunOptions, Runner};

fn main() -> spr::Result<()> {
    let opts = RunOptions::default();
    let trials = 50;
    println!("k      mean worst   stderr    mean / ln k");
    for k in [16, 64, 256] {
        let g = gen_caterpillar(k, log_regime_epsilon(k)?)?;
        let s = worst_distortion_trials(&Runner::new(&g), Algorithm::Noisy, trials, 0, &opts)?;
        println!("{k:<6} {:<12.4} {:<9.4} {:.4}", s.mean, s.stderr, s.mean / (k as f64).ln());
    }

    let g = gen_caterpillar(8, log_regime_epsilon(8)?)?;
    let est = expected_distortion(&g, Algorithm::Fast, 200, 0, &opts)?;
    let (i, j) = est.argmax_pair;
    println!(
        "k = 8: max over pairs of E[d_M/d_G] = {:.4} ± {:.4} on ({i}, {j}); E[max] = {:.4}",
        est.max_of_means, est.argmax_stderr, est.mean_worst
    );
    Ok(())
}
