//! Concentration of sums of independent exponentials: Monte-Carlo tails
//! against the closed-form bounds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spr::sampling::{exp_sum_tail_general, exp_sum_tail_upper, sample_exponential, TailBoundParams};

fn tail(params: &TailBoundParams, trials: usize, mut event: impl FnMut(f64) -> bool) -> spr::Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut hits = 0usize;
    for _ in 0..trials {
        let mut x = 0.0;
        for &l in &params.lambdas {
            x += sample_exponential(l, &mut rng)?;
        }
        hits += event(x) as usize;
    }
    Ok(hits as f64 / trials as f64)
}

fn main() -> spr::Result<()> {
    let trials = 200_000;

    let single = TailBoundParams::iid(1, 1.0)?;
    let empirical = tail(&single, trials, |x| x >= 4.0)?;
    println!("Exp(1) >= 4: empirical {empirical:.5}, bound {:.5}", exp_sum_tail_upper(&single, 4.0)?);

    let sum50 = TailBoundParams::iid(50, 1.0)?;
    let empirical = tail(&sum50, trials, |x| x >= 150.0)?;
    println!("50 x Exp(1) >= 150: empirical {empirical:.6}, bound {:.6}", exp_sum_tail_upper(&sum50, 150.0)?);

    let lambdas: Vec<f64> = (0..30).map(|i| [0.5, 1.0, 2.0][i % 3]).collect();
    let mixed = TailBoundParams::new(lambdas)?;
    let a = 2.5 * mixed.mu;
    let empirical = tail(&mixed, trials, |x| x >= a)?;
    println!("mixed sum >= 2.5 mu: empirical {empirical:.6}, bound {:.6}", exp_sum_tail_upper(&mixed, a)?);

    let alpha = 0.5;
    let general = mixed.clone().with_alpha(alpha).with_t(alpha / (4.0 * mixed.lambda_max));
    let bounds = exp_sum_tail_general(&general)?;
    let mu = mixed.mu;
    let above = tail(&mixed, trials, |x| x >= (1.0 + alpha) * mu)?;
    let below = tail(&mixed, trials, |x| x <= (1.0 - alpha) * mu)?;
    println!("two-sided, alpha = {alpha}: above {above:.5} <= {:.5}, below {below:.5} <= {:.5}", bounds.upper, bounds.lower);
    Ok(())
}
