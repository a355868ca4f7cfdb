//! Sequential data fusion by social learning for distributed attack
//! detection in sensor networks.
//!
//! A network of `N` binary sensors broadcasts one-bit decisions in index
//! order. Each honest node fuses its private signal with the log-likelihood
//! ratio of everything broadcast before it and applies a threshold test;
//! Byzantine nodes broadcast whatever a topology-aware adversary chose. The
//! crate simulates such networks under both hypotheses, aggregates per-node
//! miss-detection and false-alarm rates, and ships an exhaustive-enumeration
//! oracle that validates the likelihood recursion.
//!
//! ```
//! use social_fusion::{
//!     md_fa_curves, monte_carlo, AttackConfig, AttackStrategy, Hypothesis,
//!     RunConfig, SensorSpec,
//! };
//!
//! # fn main() -> social_fusion::Result<()> {
//! let config = RunConfig {
//!     n_nodes: 200,
//!     sensor: SensorSpec::new(1e-4, 0.05)?,
//!     tau: 0.0,
//!     attack: AttackConfig {
//!         strategy: AttackStrategy::Leading,
//!         n_star: 60,
//!         forced_bit: false,
//!     },
//!     n_runs: 1000,
//!     seed: 42,
//!     hypothesis: Hypothesis::Both,
//! };
//! let raw = monte_carlo(&config)?;
//! let stats = md_fa_curves(&raw)?;
//! assert!(stats.last().unwrap().md_rate < 0.10);
//! # Ok(())
//! # }
//! ```

pub mod adversary;
pub mod engine;
pub mod error;
pub mod fusion;
pub mod metrics;
pub mod oracle;
pub mod sensor;

pub use adversary::{plan_attack, AttackPlan, AttackStrategy};
pub use engine::{
    mix_seed, monte_carlo, run_trace, AttackConfig, Hypothesis, HypothesisRuns, RawResults,
    RunConfig, Trace,
};
pub use error::{Error, Result};
pub use fusion::{social_loglik, FusionState};
pub use metrics::{
    asymptotic_sweep, md_fa_curves, md_fa_curves_with, worst_decile_curve, MetricsReport,
    NodeStats, SweepRow, DEFAULT_UNFAVORABLE_FRACTION,
};
pub use sensor::{SensorSpec, SignalModel};
