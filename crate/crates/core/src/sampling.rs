//! Seeded randomness and closed-form tail bounds for sums of exponentials.
//!
//! Every terminal owns an independent ChaCha stream derived from the plan
//! seed, so the draw for terminal `j` does not depend on how many draws were
//! made for other terminals or in what order terminals are processed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SprError};

/// Success probability of the geometric draws.
pub const DEFAULT_P: f64 = 0.2;

/// Stream id reserved for the terminal-order permutation.
const ORDER_STREAM: u64 = u64::MAX;

/// `1 / (20 ln k)`, defined for `k >= 2`.
pub fn default_delta(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(SprError::FewerThanTwoTerminals(k));
    }
    Ok(1.0 / (20.0 * (k as f64).ln()))
}

/// An independent uniform stream for one terminal.
#[derive(Debug, Clone)]
pub struct TerminalStream(ChaCha8Rng);

impl TerminalStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        TerminalStream(rng)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn uniform(&mut self) -> f64 {
        self.0.gen::<f64>()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.0
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(SprError::InvalidProbability(p))
    }
}

/// Inverse CDF of `Geo(p)`: `ceil(ln(1 - u) / ln(1 - p))`, at least 1.
pub fn geometric_from_uniform(p: f64, u: f64) -> Result<u32> {
    check_probability(p)?;
    let x = ((-u).ln_1p() / (-p).ln_1p()).ceil();
    Ok(x.clamp(1.0, u32::MAX as f64) as u32)
}

/// One draw from `Geo(p)`, supported on `{1, 2, ...}` with mass `(1-p)^(s-1) p`.
pub fn sample_geometric(p: f64, rng: &mut impl Rng) -> Result<u32> {
    check_probability(p)?;
    geometric_from_uniform(p, rng.gen::<f64>())
}

/// Inverse CDF of `Exp(lambda)` (mean `lambda`): `-lambda ln(1 - u)`.
pub fn exponential_from_uniform(lambda: f64, u: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(SprError::InvalidParameter(format!(
            "exponential mean must be positive, got {lambda}"
        )));
    }
    Ok(-lambda * (-u).ln_1p())
}

pub fn sample_exponential(lambda: f64, rng: &mut impl Rng) -> Result<f64> {
    exponential_from_uniform(lambda, rng.gen::<f64>())
}

/// `(1 + delta)^g`.
pub fn magnitude(g: u32, delta: f64) -> f64 {
    (1.0 + delta).powf(g as f64)
}

/// Parameters of the noisy-Voronoi randomness: a seed, the geometric
/// parameter `p`, the magnitude base `1 + delta`, and optionally a pinned
/// vector of geometric draws that replaces sampling entirely.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomPlan {
    pub seed: u64,
    pub p: f64,
    pub delta: f64,
    pub draws: Option<Vec<u32>>,
}

impl RandomPlan {
    /// Default plan for `k` terminals: `p = 1/5`, `delta = 1/(20 ln k)`.
    pub fn new(k: usize, seed: u64) -> Result<Self> {
        Ok(RandomPlan { seed, p: DEFAULT_P, delta: default_delta(k)?, draws: None })
    }

    pub fn with_p(mut self, p: f64) -> Result<Self> {
        check_probability(p)?;
        self.p = p;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(SprError::InvalidParameter(format!("delta must be positive, got {delta}")));
        }
        self.delta = delta;
        Ok(self)
    }

    pub fn with_draws(mut self, draws: Vec<u32>) -> Result<Self> {
        if let Some(pos) = draws.iter().position(|&g| g < 1) {
            return Err(SprError::InvalidParameter(format!(
                "pinned draw g_{} must be at least 1",
                pos + 1
            )));
        }
        self.draws = Some(draws);
        Ok(self)
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        check_probability(self.p)?;
        if !(self.delta > 0.0) {
            return Err(SprError::InvalidParameter(format!("delta = {}", self.delta)));
        }
        if let Some(d) = &self.draws {
            if d.len() != k {
                return Err(SprError::InvalidParameter(format!(
                    "{} pinned draws for {k} terminals",
                    d.len()
                )));
            }
            if d.iter().any(|&g| g < 1) {
                return Err(SprError::InvalidParameter("pinned draws must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn stream(&self, terminal: usize) -> TerminalStream {
        TerminalStream::new(self.seed, terminal as u64)
    }

    /// `g_j`: the pinned value if present, else the first draw of stream `j`.
    pub fn geometric_draw(&self, terminal: usize) -> Result<u32> {
        match &self.draws {
            Some(d) => d.get(terminal).copied().ok_or_else(|| {
                SprError::InvalidParameter(format!("no pinned draw for terminal {terminal}"))
            }),
            None => geometric_from_uniform(self.p, self.stream(terminal).uniform()),
        }
    }

    /// All `g_1..g_k`.
    pub fn geometric_draws(&self, k: usize) -> Result<Vec<u32>> {
        (0..k).map(|j| self.geometric_draw(j)).collect()
    }

    /// Seeded permutation of `0..k`, drawn from a stream no terminal uses.
    pub fn terminal_order(&self, k: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..k).collect();
        let mut s = TerminalStream::new(self.seed, ORDER_STREAM);
        order.shuffle(s.rng());
        order
    }
}

/// Independent `X_i ~ Exp(lambda_i)` together with the free parameters of
/// the moment-generating-function bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBoundParams {
    pub lambdas: Vec<f64>,
    pub lambda_max: f64,
    pub mu: f64,
    pub alpha: f64,
    pub t: f64,
}

impl TailBoundParams {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() || lambdas.iter().any(|&l| !(l > 0.0)) {
            return Err(SprError::InvalidParameter(
                "need at least one positive exponential mean".into(),
            ));
        }
        let lambda_max = lambdas.iter().copied().fold(0.0, f64::max);
        let mu = lambdas.iter().sum();
        Ok(TailBoundParams { lambdas, lambda_max, mu, alpha: 0.0, t: 0.0 })
    }

    pub fn iid(n: usize, lambda: f64) -> Result<Self> {
        Self::new(vec![lambda; n])
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }
}

/// `Pr[X >= a] <= exp(-(a - 2 mu) / (2 lambda_max))`, valid for `a >= 2 mu`.
pub fn exp_sum_tail_upper(params: &TailBoundParams, a: f64) -> Result<f64> {
    if a < 2.0 * params.mu {
        return Err(SprError::PreconditionViolated(format!(
            "threshold {a} below 2*mu = {}",
            2.0 * params.mu
        )));
    }
    Ok((-(a - 2.0 * params.mu) / (2.0 * params.lambda_max)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralTailBounds {
    /// Bound on `Pr[X >= (1 + alpha) mu]` at the supplied `t`.
    pub upper: f64,
    /// Bound on `Pr[X <= (1 - alpha) mu]` at the supplied `t`.
    pub lower: f64,
    /// `exp(-alpha^2 mu / (8 lambda_max))`, when `alpha <= 2`.
    pub simplified_upper: Option<f64>,
    /// `exp(-alpha^2 mu / (4 lambda_max))`, when `alpha <= 1`.
    pub simplified_lower: Option<f64>,
}

/// Moment-generating-function bounds on both tails of `X = sum X_i`:
/// `exp(-t mu (alpha - 2 t lambda_max))` above and
/// `exp(-t mu (alpha - t lambda_max))` below, for `0 < t <= 1/(2 lambda_max)`
/// and `alpha >= 2 t lambda_max`. The simplified forms fix
/// `t = alpha / (4 lambda_max)` and `t = alpha / (2 lambda_max)` respectively.
pub fn exp_sum_tail_general(params: &TailBoundParams) -> Result<GeneralTailBounds> {
    let (lm, mu, alpha, t) = (params.lambda_max, params.mu, params.alpha, params.t);
    if !(t > 0.0 && t <= 1.0 / (2.0 * lm)) {
        return Err(SprError::PreconditionViolated(format!(
            "t = {t} outside (0, 1/(2 lambda_max)]"
        )));
    }
    if alpha < 2.0 * t * lm {
        return Err(SprError::PreconditionViolated(format!(
            "alpha = {alpha} below 2 t lambda_max = {}",
            2.0 * t * lm
        )));
    }
    let upper = (-t * mu * (alpha - 2.0 * t * lm)).exp();
    let lower = (-t * mu * (alpha - t * lm)).exp();
    let simplified_upper = (alpha <= 2.0).then(|| (-alpha * alpha * mu / (8.0 * lm)).exp());
    let simplified_lower = (alpha <= 1.0).then(|| (-alpha * alpha * mu / (4.0 * lm)).exp());
    Ok(GeneralTailBounds { upper, lower, simplified_upper, simplified_lower })
}
