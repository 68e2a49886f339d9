//! Single exponential expansion.
//!
//! A sample space that starts at size `s0` and grows as `s(t) = s0 * e^(lambda t)`
//! dilutes the probability of any fixed initial outcome partition at the same
//! rate. In the scaled time `T = lambda * t` the relations are parameter-free:
//!
//! ```text
//! p(x0 | T) = e^(-T)
//! H(T)      = -ln p = T        (entropy in nats)
//! ```
//!
//! Entropy is always reported in nats (natural logarithm base). Probabilities
//! that underflow to zero at extreme `T` are reported as `0.0`; entropy never
//! underflows because it is linear in `T`.

use crate::error::{check_time, Error, Result};

/// Probability that the outcome still falls in the initial reference
/// partition after scaled time `t_scaled = lambda * t`.
pub fn probability(t_scaled: f64) -> Result<f64> {
    check_time("scaled time", t_scaled)?;
    Ok((-t_scaled).exp())
}

/// Information entropy in nats accumulated after scaled time `t_scaled`.
///
/// Equal to the scaled time itself: `H = -ln e^(-T) = T`.
pub fn entropy(t_scaled: f64) -> Result<f64> {
    check_time("scaled time", t_scaled)?;
    Ok(t_scaled)
}

/// An exponentially expanding sample space with an explicit initial size and
/// growth rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonoExpModel {
    s0: f64,
    lambda: f64,
}

impl MonoExpModel {
    /// Builds a model from the initial sample-space size `s0 >= 1` and the
    /// exponential growth rate `lambda > 0` (per unit time).
    pub fn new(s0: f64, lambda: f64) -> Result<Self> {
        if !s0.is_finite() || s0 < 1.0 {
            return Err(Error::validation(format!("s0 must be >= 1, got {s0}")));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::validation(format!("lambda must be > 0, got {lambda}")));
        }
        Ok(MonoExpModel { s0, lambda })
    }

    /// Initial sample-space size.
    pub fn s0(&self) -> f64 {
        self.s0
    }

    /// Exponential growth rate per unit time.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Scaled (dimensionless) time `T = lambda * t`.
    pub fn scaled_time(&self, t: f64) -> f64 {
        self.lambda * t
    }

    /// Sample-space size `s(t) = s0 * e^(lambda t)` at time `t >= 0`.
    pub fn sample_space_size(&self, t: f64) -> Result<f64> {
        check_time("time", t)?;
        Ok(self.s0 * (self.lambda * t).exp())
    }
}
