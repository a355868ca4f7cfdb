//! Binary sensor model: error rate `q`, coverage ratio `r`, and the induced
//! signal log-likelihood ratio with its conditional CDF.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of one binary sensor.
///
/// `q` is the probability that electronic noise flips the sensor output;
/// `r` is the probability that an attack placed uniformly over the
/// surveilled area falls inside the sensor's range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensorSpec {
    /// Sensor error rate, `0 <= q < 1/2`.
    pub q: f64,
    /// Coverage ratio, `0 < r <= 1`.
    pub r: f64,
}

impl SensorSpec {
    /// Validates and builds a sensor spec.
    ///
    /// `q >= 1/2` and `r = 0` are rejected: both collapse the strict
    /// ordering `lam0 < 0 < lam1` the fusion rule relies on. `q = 0` is
    /// accepted but yields an infinite `lam1` (a broadcast 1 is then
    /// impossible under `W=0`); IEEE arithmetic propagates that corner
    /// consistently.
    pub fn new(q: f64, r: f64) -> Result<Self> {
        let spec = SensorSpec { q, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.q.is_finite() || !(0.0..0.5).contains(&self.q) {
            return Err(Error::InvalidSensorSpec(format!(
                "q must lie in [0, 0.5), got {}",
                self.q
            )));
        }
        if !self.r.is_finite() || !(self.r > 0.0 && self.r <= 1.0) {
            return Err(Error::InvalidSensorSpec(format!(
                "r must lie in (0, 1], got {}",
                self.r
            )));
        }
        Ok(())
    }

    /// `P{S=1 | W=1} = r + q - 2rq`: the attack is either in range and
    /// measured correctly, or out of range and flipped by noise.
    pub fn detection_prob(&self) -> f64 {
        self.r + self.q - 2.0 * self.r * self.q
    }

    /// Derives the signal model induced by this sensor.
    pub fn model(&self) -> SignalModel {
        SignalModel::from_spec(self)
    }
}

/// Conditional distribution of one binary signal and its log-likelihood
/// ratio `Lam_S`.
///
/// Downstream code consumes only [`signal_loglik`](Self::signal_loglik),
/// [`loglik_cdf`](Self::loglik_cdf) and
/// [`sample_signal`](Self::sample_signal), so a richer signal family can
/// slot in behind the same three operations later.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalModel {
    /// `P{S=1 | W=0}` (= q).
    pub p_fa: f64,
    /// `P{S=1 | W=1}` (= r + q - 2rq).
    pub p_d: f64,
    /// `Lam_S(0) = ln((1-p_d)/(1-p_fa))`, negative for informative sensors.
    pub lam0: f64,
    /// `Lam_S(1) = ln(p_d/p_fa)`, positive for informative sensors.
    pub lam1: f64,
}

impl SignalModel {
    pub fn from_spec(spec: &SensorSpec) -> Self {
        let p_fa = spec.q;
        let p_d = spec.detection_prob();
        SignalModel {
            p_fa,
            p_d,
            lam0: ((1.0 - p_d) / (1.0 - p_fa)).ln(),
            lam1: (p_d / p_fa).ln(),
        }
    }

    /// `P{S=1 | W=w}`.
    pub fn signal_prob(&self, w: bool) -> f64 {
        if w {
            self.p_d
        } else {
            self.p_fa
        }
    }

    /// Log-likelihood ratio of a single signal value.
    pub fn signal_loglik(&self, s: bool) -> f64 {
        if s {
            self.lam1
        } else {
            self.lam0
        }
    }

    /// `P{Lam_S(S) < a | W=w}` under strict inequality.
    ///
    /// Strictness matches the decision event `Lam_S(S) + L < tau`, so the
    /// value at an atom belongs to the right-hand case: `F(lam0) = 0` and
    /// `F(lam1) = P{S=0|w}`.
    pub fn loglik_cdf(&self, w: bool, a: f64) -> f64 {
        if a <= self.lam0 {
            0.0
        } else if a <= self.lam1 {
            1.0 - self.signal_prob(w)
        } else {
            1.0
        }
    }

    /// Draws one signal conditioned on `W=w`.
    pub fn sample_signal<R: Rng + ?Sized>(&self, w: bool, rng: &mut R) -> bool {
        // `random::<f64>()` is uniform on [0, 1), so p = 0 never fires and
        // p = 1 always does.
        rng.random::<f64>() < self.signal_prob(w)
    }
}
