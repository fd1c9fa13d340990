//! Steiner point removal: given a weighted graph with `k` terminals, build a
//! graph minor on the terminals alone whose distances approximate the
//! original terminal distances.
//!
//! The algorithms:
//!
//! * [`noisy_voronoi`]: each terminal in turn claims the unclustered vertices
//!   whose distance to it is at most a random magnitude `R_j = (1 + δ)^g`
//!   times their distance to the nearest terminal. Expected distortion is
//!   `O(log k)`.
//! * [`fast_noisy_voronoi`]: the same clustering grown with an addressable
//!   heap, in `O(m + min(m, nk) log n)` time, with single-crossing minor
//!   weights.
//! * [`ball_growing`]: exponential ball growing over rounds, included as the
//!   `Ω(√log k)` baseline.
//! * [`plain_voronoi`]: nearest-terminal cells, which can distort by `Θ(k)`.
//!
//! [`Runner`] is the usual entry point. It caches distances per graph and
//! runs any [`Algorithm`] for a seed. The `examples/` directory has one
//! runnable program per capability; start with `noisy_voronoi.rs`.
//!
//! ```
//! use spr::{gen_caterpillar, Algorithm, RunOptions, Runner};
//!
//! let g = gen_caterpillar(8, 0.1).unwrap();
//! let runner = Runner::new(&g);
//! let out = runner.run(Algorithm::Fast, 7, &RunOptions::default()).unwrap();
//! let (worst, _) = runner.worst_distortion(&out.minor).unwrap();
//! assert!(worst >= 1.0 - 1e-9);
//! ```

pub mod ball_growing;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod fast;
pub mod graph;
pub mod heap;
pub mod instances;
pub mod minor;
pub mod noisy_voronoi;
pub mod partition;
pub mod record;
pub mod runner;
pub mod sampling;

pub use ball_growing::{ball_growing, ball_growing_normalized, normalize_instance, BallGrowingConfig};
pub use diagnostics::{expected_distortion, interval_partition, worst_distortion_trials};
pub use error::{Result, SprError};
pub use fast::{fast_noisy_voronoi, FastConfig};
pub use graph::io::{load_graph, save_graph};
pub use graph::{build_graph, WeightedGraph};
pub use instances::{gen_bg_lower_bound, gen_binary_tree, gen_caterpillar, gen_random};
pub use minor::{distortion, InducedMinor, WeightMode};
pub use noisy_voronoi::{noisy_voronoi, plain_voronoi, RunConfig};
pub use partition::{validate_partition, TerminalPartition};
pub use record::MinorRecord;
pub use runner::{Algorithm, RunOptions, Runner};
pub use sampling::RandomPlan;
