//! Per-node Bayesian decision rule and the iterative social log-likelihood.
//!
//! Each node compares `Lam_S(s) + L` against the threshold `tau`, where `L`
//! is the log-likelihood ratio of every bit broadcast before it. `L` itself
//! is computed by a linear-time recursion: conditioned on the history, an
//! honest node emits 0 with probability `F_w(tau - L)`, so each observed bit
//! contributes one log-ratio of CDF values.

use crate::sensor::SignalModel;

/// Running fusion state of a node scanning the broadcast sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionState {
    /// Social log-likelihood `L` of the bits consumed so far (nats).
    pub l: f64,
    /// Number of broadcasts consumed.
    pub n: u64,
    /// Decision threshold `tau` (nats).
    pub tau: f64,
}

impl FusionState {
    /// Empty history: `L = 0`.
    pub fn new(tau: f64) -> Self {
        FusionState { l: 0.0, n: 0, tau }
    }

    /// Bayesian decision for a node holding signal `s` at this state.
    ///
    /// Returns 0 iff `Lam_S(s) + L < tau`; ties go to 1, favoring
    /// detection.
    // The negated strict-< keeps ties at 1, and also the NaN sums a q = 0
    // model produces in an up-cascade (-inf + inf); `>=` would flip those.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn decide(&self, s: bool, model: &SignalModel) -> bool {
        !(model.signal_loglik(s) + self.l < self.tau)
    }

    /// `P{X = 0 | history, W=w}` for an honest node at this state,
    /// i.e. `F_w(tau - L)`.
    pub fn honest_emission_prob(&self, w: bool, model: &SignalModel) -> f64 {
        model.loglik_cdf(w, self.tau - self.l)
    }

    /// Log-likelihood increment contributed by observing broadcast `x`.
    ///
    /// With `F_w = F_w(tau - L)`: `ln(F_1/F_0)` for `x = 0`,
    /// `ln((1-F_1)/(1-F_0))` for `x = 1`.
    ///
    /// Inside a cascade both CDFs equal 0 or both equal 1, so the observed
    /// bit is either certain (ratio 1/1) or impossible for an honest node
    /// (0/0, producible only by a Byzantine broadcast). Both cases return
    /// exactly 0, keeping `L` finite so later informative evidence still
    /// counts.
    pub fn increment(&self, x: bool, model: &SignalModel) -> f64 {
        let a = self.tau - self.l;
        let f1 = model.loglik_cdf(true, a);
        let f0 = model.loglik_cdf(false, a);
        if f1 == f0 && (f1 == 0.0 || f1 == 1.0) {
            return 0.0;
        }
        if x {
            ((1.0 - f1) / (1.0 - f0)).ln()
        } else {
            (f1 / f0).ln()
        }
    }

    /// Consumes one broadcast bit, returning the increment applied.
    pub fn advance(&mut self, x: bool, model: &SignalModel) -> f64 {
        let inc = self.increment(x, model);
        self.l += inc;
        self.n += 1;
        inc
    }
}

/// Social log-likelihood trajectory `(L_1, ..., L_n)` of a broadcast
/// string, starting from `L_0 = 0`. Linear in the string length.
pub fn social_loglik(bits: &[bool], tau: f64, model: &SignalModel) -> Vec<f64> {
    let mut state = FusionState::new(tau);
    bits.iter()
        .map(|&x| {
            state.advance(x, model);
            state.l
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensor::SensorSpec;

    const LAM1_REF: f64 = 6.216406480363571;
    const LAM0_REF: f64 = -0.051288030717140505;

    fn reference_model() -> SignalModel {
        SensorSpec::new(1e-4, 0.05).unwrap().model()
    }

    #[test]
    fn decide_at_origin() {
        let model = reference_model();
        let state = FusionState::new(0.0);
        assert!(state.decide(true, &model)); // 6.2164 + 0 >= 0
        assert!(!state.decide(false, &model)); // -0.0513 < 0
    }

    #[test]
    fn decide_up_cascade_condition() {
        let model = reference_model();
        // Social evidence just above |lam0| outweighs one negative signal.
        let state = FusionState {
            l: -model.lam0 + 1e-9,
            n: 3,
            tau: 0.0,
        };
        assert!(state.decide(false, &model));
    }

    #[test]
    fn decide_tie_goes_to_one() {
        let model = reference_model();
        let state = FusionState {
            l: -model.lam0,
            n: 1,
            tau: 0.0,
        };
        // Lam_S(0) + L == tau exactly.
        assert!(state.decide(false, &model));
    }

    #[test]
    fn honest_emission_prob_cases() {
        let model = reference_model();
        let state = FusionState::new(0.0);
        assert!((state.honest_emission_prob(true, &model) - 0.94991).abs() < 1e-12);

        // Down-cascade region: emits 0 deterministically.
        let down = FusionState {
            l: -(model.lam1 + 0.5),
            n: 9,
            tau: 0.0,
        };
        assert_eq!(down.honest_emission_prob(false, &model), 1.0);
        assert_eq!(down.honest_emission_prob(true, &model), 1.0);

        // Up-cascade region: never emits 0.
        let up = FusionState {
            l: -model.lam0,
            n: 9,
            tau: 0.0,
        };
        assert_eq!(up.honest_emission_prob(false, &model), 0.0);
        assert_eq!(up.honest_emission_prob(true, &model), 0.0);
    }

    #[test]
    fn increment_informative_region_equals_signal_loglik() {
        let model = reference_model();
        let state = FusionState::new(0.0);
        // For the binary sensor, F_1/F_0 = (1-p_d)/(1-p_fa) in the
        // informative region, so the increments reduce to lam0 / lam1.
        assert!((state.increment(false, &model) - LAM0_REF).abs() < 1e-12);
        assert!((state.increment(true, &model) - LAM1_REF).abs() < 1e-12);
    }

    #[test]
    fn increment_absorbed_regions_are_zero() {
        let model = reference_model();
        let down = FusionState {
            l: -(model.lam1 + 1.0),
            n: 4,
            tau: 0.0,
        };
        assert_eq!(down.increment(false, &model), 0.0);
        assert_eq!(down.increment(true, &model), 0.0); // impossible bit, 0/0 convention

        let up = FusionState {
            l: -model.lam0 + 1.0,
            n: 4,
            tau: 0.0,
        };
        assert_eq!(up.increment(true, &model), 0.0);
        assert_eq!(up.increment(false, &model), 0.0); // impossible bit, 0/0 convention
    }

    #[test]
    fn social_loglik_two_zeros() {
        let model = reference_model();
        let traj = social_loglik(&[false, false], 0.0, &model);
        assert_eq!(traj.len(), 2);
        assert!((traj[0] - LAM0_REF).abs() < 1e-12);
        assert!((traj[1] - 2.0 * LAM0_REF).abs() < 1e-12);
    }

    #[test]
    fn social_loglik_empty_history() {
        let model = reference_model();
        assert!(social_loglik(&[], 0.0, &model).is_empty());
    }

    #[test]
    fn advance_tracks_consumed_count() {
        let model = reference_model();
        let mut state = FusionState::new(0.0);
        state.advance(false, &model);
        state.advance(true, &model);
        assert_eq!(state.n, 2);
    }

    #[test]
    fn change_of_measure_identity_at_origin() {
        let model = reference_model();
        let state = FusionState::new(0.0);
        let p0 = state.honest_emission_prob(false, &model);
        let e0 = p0 * state.increment(false, &model).exp()
            + (1.0 - p0) * state.increment(true, &model).exp();
        assert!((e0 - 1.0).abs() < 1e-12);
    }
}
