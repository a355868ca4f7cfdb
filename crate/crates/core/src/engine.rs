//! Single network realizations and deterministic Monte Carlo batches.
//!
//! Every run draws from its own ChaCha8 stream seeded by a fixed mixing
//! function of `(master seed, run index, hypothesis)`, so batch results are
//! bit-reproducible regardless of worker count or scheduling order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{plan_attack, AttackPlan, AttackStrategy};
use crate::error::{Error, Result};
use crate::fusion::FusionState;
use crate::sensor::{SensorSpec, SignalModel};

/// Which conditional law(s) to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    W0,
    W1,
    Both,
}

impl Hypothesis {
    pub fn includes(&self, w: bool) -> bool {
        match self {
            Hypothesis::W0 => !w,
            Hypothesis::W1 => w,
            Hypothesis::Both => true,
        }
    }
}

/// Attack parameters as configured (the realized index set lives in
/// [`AttackPlan`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackConfig {
    pub strategy: AttackStrategy,
    pub n_star: usize,
    pub forced_bit: bool,
}

/// Full description of one Monte Carlo experiment point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n_nodes: usize,
    pub sensor: SensorSpec,
    /// Decision threshold (nats).
    pub tau: f64,
    pub attack: AttackConfig,
    pub n_runs: usize,
    pub seed: u64,
    pub hypothesis: Hypothesis,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.sensor.validate()?;
        if self.n_nodes == 0 {
            return Err(Error::InvalidRunConfig("n_nodes must be >= 1".into()));
        }
        if self.n_runs == 0 {
            return Err(Error::InvalidRunConfig("n_runs must be >= 1".into()));
        }
        if !self.tau.is_finite() {
            return Err(Error::InvalidRunConfig(format!(
                "tau must be finite, got {}",
                self.tau
            )));
        }
        if self.attack.n_star > self.n_nodes {
            return Err(Error::InvalidRunConfig(format!(
                "attack.n_star ({}) exceeds n_nodes ({})",
                self.attack.n_star, self.n_nodes
            )));
        }
        // Decision matrices are materialized; refuse sizes that cannot be.
        self.n_runs
            .checked_mul(self.n_nodes)
            .ok_or_else(|| Error::InvalidRunConfig("n_runs * n_nodes overflows".into()))?;
        Ok(())
    }

    /// Realizes the configured attack plan (deterministic given `seed`).
    pub fn attack_plan(&self) -> Result<AttackPlan> {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(self.seed, PLAN_STREAM));
        plan_attack(
            self.attack.strategy,
            self.n_nodes,
            self.attack.n_star,
            self.attack.forced_bit,
            &mut rng,
        )
    }
}

/// One simulated network realization.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// Hypothesis the signals were drawn under.
    pub w: bool,
    /// Broadcast bits `x_1..x_N` (forced or honest).
    pub bits: Vec<bool>,
    /// Social log-likelihood trajectory `L_1..L_N` over the emitted bits.
    pub loglik: Vec<f64>,
    /// `true` where the broadcast was forced by the adversary.
    pub byzantine_mask: Vec<bool>,
}

/// Decision matrix and final log-likelihoods for one hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisRuns {
    pub n_runs: usize,
    pub n_nodes: usize,
    /// Run-major broadcasts: `decisions[run * n_nodes + node - 1]`.
    pub decisions: Vec<bool>,
    /// `L_N` per run.
    pub final_loglik: Vec<f64>,
}

impl HypothesisRuns {
    /// Broadcast of 1-based `node_index` in `run`.
    pub fn decision(&self, run: usize, node_index: usize) -> bool {
        self.decisions[run * self.n_nodes + (node_index - 1)]
    }

    /// Fraction of runs broadcasting 1 at 1-based `node_index`.
    pub fn emission_rate(&self, node_index: usize) -> f64 {
        let ones = (0..self.n_runs)
            .filter(|&run| self.decision(run, node_index))
            .count();
        ones as f64 / self.n_runs as f64
    }

    /// Fraction of runs broadcasting 0 at 1-based `node_index`.
    pub fn miss_rate(&self, node_index: usize) -> f64 {
        let zeros = (0..self.n_runs)
            .filter(|&run| !self.decision(run, node_index))
            .count();
        zeros as f64 / self.n_runs as f64
    }
}

/// Raw Monte Carlo output for every hypothesis requested.
#[derive(Debug, Clone, PartialEq)]
pub struct RawResults {
    pub config: RunConfig,
    pub w0: Option<HypothesisRuns>,
    pub w1: Option<HypothesisRuns>,
}

impl RawResults {
    pub fn runs_for(&self, w: bool) -> Result<&HypothesisRuns> {
        let slot = if w { &self.w1 } else { &self.w0 };
        slot.as_ref()
            .ok_or(Error::MissingHypothesis(if w { "w1" } else { "w0" }))
    }
}

/// Stream index reserved for drawing the attack plan.
pub const PLAN_STREAM: u64 = u64::MAX;

/// Derives the ChaCha8 seed for one RNG stream of a batch.
///
/// Trace streams use `stream = 2 * run_index + w`; the attack plan uses
/// [`PLAN_STREAM`]. The map is `splitmix64(master ^ (stream * C))` with the
/// SplitMix64 finalizer and `C = 0x9E3779B97F4A7C15`; multiplying by the odd
/// constant keeps distinct streams distinct before the bijective finalizer,
/// so no two streams of a batch collide.
pub fn mix_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn trace_seed(master: u64, run_index: usize, w: bool) -> u64 {
    mix_seed(master, 2 * run_index as u64 + w as u64)
}

/// Simulates one realization: nodes broadcast in index order, Byzantine
/// nodes emit the forced bit without sampling, honest nodes sample a signal
/// and apply the threshold rule, and the fusion state advances on the
/// emitted (possibly falsified) bit.
pub fn run_trace<R: Rng + ?Sized>(
    config: &RunConfig,
    w: bool,
    plan: &AttackPlan,
    rng: &mut R,
) -> Trace {
    let model = config.sensor.model();
    run_trace_with_model(config.n_nodes, config.tau, &model, w, plan, rng)
}

fn run_trace_with_model<R: Rng + ?Sized>(
    n_nodes: usize,
    tau: f64,
    model: &SignalModel,
    w: bool,
    plan: &AttackPlan,
    rng: &mut R,
) -> Trace {
    let mut state = FusionState::new(tau);
    let mut bits = Vec::with_capacity(n_nodes);
    let mut loglik = Vec::with_capacity(n_nodes);
    let mut byzantine_mask = Vec::with_capacity(n_nodes);
    for node in 1..=n_nodes {
        let forced = plan.forced_emission(node);
        let x = match forced {
            Some(bit) => bit,
            None => {
                let s = model.sample_signal(w, rng);
                state.decide(s, model)
            }
        };
        state.advance(x, model);
        bits.push(x);
        loglik.push(state.l);
        byzantine_mask.push(forced.is_some());
    }
    Trace {
        w,
        bits,
        loglik,
        byzantine_mask,
    }
}

/// Runs the configured batch: `n_runs` independent traces per requested
/// hypothesis, in parallel, with per-run seeding that makes the output
/// independent of the worker count.
pub fn monte_carlo(config: &RunConfig) -> Result<RawResults> {
    config.validate()?;
    let model = config.sensor.model();
    let plan = config.attack_plan()?;

    let simulate = |w: bool| -> HypothesisRuns {
        let rows: Vec<(Vec<bool>, f64)> = (0..config.n_runs)
            .into_par_iter()
            .map(|run| {
                let mut rng = ChaCha8Rng::seed_from_u64(trace_seed(config.seed, run, w));
                let trace =
                    run_trace_with_model(config.n_nodes, config.tau, &model, w, &plan, &mut rng);
                let final_l = *trace.loglik.last().expect("n_nodes >= 1");
                (trace.bits, final_l)
            })
            .collect();
        let mut decisions = Vec::with_capacity(config.n_runs * config.n_nodes);
        let mut final_loglik = Vec::with_capacity(config.n_runs);
        for (bits, l) in rows {
            decisions.extend_from_slice(&bits);
            final_loglik.push(l);
        }
        HypothesisRuns {
            n_runs: config.n_runs,
            n_nodes: config.n_nodes,
            decisions,
            final_loglik,
        }
    };

    Ok(RawResults {
        config: config.clone(),
        w0: config.hypothesis.includes(false).then(|| simulate(false)),
        w1: config.hypothesis.includes(true).then(|| simulate(true)),
    })
}
