//! Exponential contraction of a finite sample space.
//!
//! A space of `s0` equally likely alternatives that halves once per time unit
//! concentrates probability instead of diluting it:
//!
//! ```text
//! p(x0 | t) = e^(t ln 2) / s0       for 0 <= t <= t_max
//! t_max     = ln(s0) / ln 2         (p reaches 1 here)
//! H(t)      = -t ln 2               (entropy change, in nats)
//! ```
//!
//! The entropy is the change relative to the start of the contraction; it is
//! negative because each halving removes one bit (`ln 2` nats) of
//! uncertainty. Times beyond `t_max` are rejected: fewer than one alternative
//! would remain.

use std::f64::consts::LN_2;

use crate::error::{check_time, Error, Result};

/// Feasibility horizon `t_max = ln(s0) / ln 2`: the number of halvings after
/// which a space of `s0` alternatives is down to a single one.
pub fn t_max(s0: u64) -> Result<f64> {
    if s0 < 2 {
        return Err(Error::validation(format!(
            "initial size must be an integer >= 2, got {s0}"
        )));
    }
    Ok((s0 as f64).ln() / LN_2)
}

/// Entropy change after contracting for time `t >= 0`: `H(t) = -t ln 2`.
///
/// Each halving removes `ln 2` nats, so the value is negative for `t > 0`.
pub fn entropy(t: f64) -> Result<f64> {
    check_time("time", t)?;
    let h = -(t * LN_2);
    Ok(if h == 0.0 { 0.0 } else { h })
}

/// A sample space of `s0` equally likely alternatives halving once per time
/// unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionModel {
    s0: u64,
    t_max: f64,
}

/// True when `t` lies past the horizon by more than a hair. The slack keeps
/// exact boundary calls (for example `t = 10` on a space of `2^10`) from
/// being rejected when `t_max` itself rounded down by an ulp.
fn beyond_horizon(t: f64, t_max: f64) -> bool {
    t > t_max && (t - t_max) > 1e-9 * t_max.max(1.0)
}

impl ContractionModel {
    /// Builds a contraction model over `s0 >= 2` initial alternatives.
    pub fn new(s0: u64) -> Result<Self> {
        Ok(ContractionModel {
            s0,
            t_max: t_max(s0)?,
        })
    }

    /// Initial number of alternatives.
    pub fn s0(&self) -> u64 {
        self.s0
    }

    /// Time at which the space is down to one alternative and `p` reaches 1.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Probability of the initial outcome after contracting for time
    /// `0 <= t <= t_max`: `p = e^(t ln 2) / s0`, clamped to at most 1.
    pub fn probability(&self, t: f64) -> Result<f64> {
        check_time("time", t)?;
        if beyond_horizon(t, self.t_max) {
            return Err(Error::domain(format!(
                "time {t} exceeds the contraction horizon t_max = {} (space of {} is exhausted)",
                self.t_max, self.s0
            )));
        }
        Ok(((t * LN_2).exp() / self.s0 as f64).min(1.0))
    }

    /// Entropy change after contracting for time `0 <= t <= t_max`.
    pub fn entropy(&self, t: f64) -> Result<f64> {
        check_time("time", t)?;
        if beyond_horizon(t, self.t_max) {
            return Err(Error::domain(format!(
                "time {t} exceeds the contraction horizon t_max = {}",
                self.t_max
            )));
        }
        entropy(t)
    }
}
