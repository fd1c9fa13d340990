//! Plain Voronoi cells on the caterpillar contract the spine into a path of
//! heavy edges, so the end-to-end terminal pair is stretched by `Θ(k)`.
//! Noisy Voronoi on the same instance stays logarithmic.

use spr::diagnostics::worst_distortion_trials;
use spr::{gen_caterpillar, Algorithm, RunOptions, Runner};

fn main() -> spr::Result<()> {
    let (k, eps) = (100, 1e-4);
    let g = gen_caterpillar(k, eps)?;
    let runner = Runner::new(&g);

    let voronoi = runner.run(Algorithm::Voronoi, 0, &RunOptions::default())?;
    let (worst, pair) = runner.worst_distortion(&voronoi.minor)?;
    let kf = k as f64;
    let predicted = (kf - 1.0) * (2.0 + eps) / (2.0 + (kf - 1.0) * eps);
    println!("caterpillar k = {k}, eps = {eps}");
    println!("voronoi: worst distortion {worst:.4} on pair {pair:?} (closed form {predicted:.4})");

    let noisy = worst_distortion_trials(&runner, Algorithm::Noisy, 20, 0, &RunOptions::default())?;
    println!(
        "noisy voronoi over {} seeds: mean worst {:.3} ± {:.3} (ln k = {:.3})",
        noisy.trials,
        noisy.mean,
        noisy.stderr,
        kf.ln()
    );
    Ok(())
}
