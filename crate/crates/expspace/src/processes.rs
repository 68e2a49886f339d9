//! Several independent exponential processes expanding one sample space.
//!
//! When `n` independent processes with rates `lambda_1 .. lambda_n` act on the
//! same space, survival probabilities multiply and entropies add, which is
//! the same as a single process with the combined rate `lambda_c = sum(lambda_i)`:
//!
//! ```text
//! p(x0 | t) = prod_i e^(-lambda_i t) = e^(-lambda_c t)
//! H(t)      = sum_i lambda_i t       = lambda_c t
//! ```

use crate::error::{check_time, Error, Result};
use crate::mono;

/// A nonempty set of independent exponential expansion rates.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessSet {
    rates: Vec<f64>,
}

/// Per-process share of probability decay and entropy at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessContribution {
    pub rate: f64,
    pub probability: f64,
    pub entropy: f64,
}

impl ProcessSet {
    /// Builds a process set from per-process rates. All rates must be
    /// positive and finite, and at least one process is required.
    pub fn new(rates: Vec<f64>) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::validation("process set must contain at least one rate"));
        }
        for (i, &r) in rates.iter().enumerate() {
            if !r.is_finite() || r <= 0.0 {
                return Err(Error::validation(format!(
                    "process rate {} must be > 0, got {r}",
                    i + 1
                )));
            }
        }
        Ok(ProcessSet { rates })
    }

    /// The individual process rates, in construction order.
    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// Number of processes.
    pub fn len(&self) -> usize {
        self.rates.len()
    }

    /// Always false: the constructor rejects empty sets.
    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    /// Combined rate `lambda_c = sum(lambda_i)` of the equivalent single process.
    pub fn combined_rate(&self) -> f64 {
        self.rates.iter().sum()
    }

    /// Per-process probability and entropy contributions at time `t >= 0`.
    ///
    /// The product of the probabilities equals `e^(-lambda_c t)` and the sum
    /// of the entropies equals `lambda_c t`.
    pub fn decompose(&self, t: f64) -> Result<Vec<ProcessContribution>> {
        check_time("time", t)?;
        self.rates
            .iter()
            .map(|&rate| {
                let scaled = rate * t;
                Ok(ProcessContribution {
                    rate,
                    probability: mono::probability(scaled)?,
                    entropy: mono::entropy(scaled)?,
                })
            })
            .collect()
    }
}
