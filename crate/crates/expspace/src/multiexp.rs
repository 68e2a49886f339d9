//! Multi-exponential survival models.
//!
//! Real systems often drain probability out of the initial partition through
//! several channels at once, each with its own weight and decay rate. The
//! survival probability in scaled time `T` is a convex mixture of
//! exponentials
//!
//! ```text
//! p(x0 | T) = sum_i A_i e^(-c_i T)     with sum_i A_i = 1
//! H(T)      = -ln p(x0 | T)            (nats)
//! ```
//!
//! Rates are relative to the fastest channel, so the leading rate is pinned
//! to `c_1 = 1` and the remaining rates decrease strictly. At large `T` the
//! slowest channel dominates and the entropy approaches the straight line
//! `H(T) ~= c_n T - ln A_n`.

use crate::error::{check_time, Error, Result};

/// Weights must sum to 1 within this tolerance before renormalization.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// The leading (largest) rate must equal 1 within this tolerance.
pub const LEAD_RATE_TOLERANCE: f64 = 1e-12;

/// Below this probability the entropy switches from `-ln p` to a factored
/// form that never underflows.
const DIRECT_LOG_FLOOR: f64 = 1e-280;

/// One decay channel: a positive weight `A` and a positive rate `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpComponent {
    pub weight: f64,
    pub rate: f64,
}

/// A validated convex mixture of decaying exponentials.
///
/// Components are stored sorted by strictly decreasing rate. Weights are
/// renormalized on construction so that their floating-point sum is exactly
/// `1.0`, which makes `probability(0.0)` return exactly `1.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiExpModel {
    components: Vec<ExpComponent>,
}

impl MultiExpModel {
    /// Builds a model from `(weight, rate)` channels.
    ///
    /// Requirements: at least one component; every weight and rate positive
    /// and finite; no two rates equal; the largest rate equal to 1 within
    /// [`LEAD_RATE_TOLERANCE`]; weights summing to 1 within
    /// [`WEIGHT_SUM_TOLERANCE`]. Components may be given in any order.
    pub fn new(components: Vec<ExpComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::validation("model must contain at least one component"));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.weight.is_finite() || c.weight <= 0.0 {
                return Err(Error::validation(format!(
                    "component {}: weight must be > 0, got {}",
                    i + 1,
                    c.weight
                )));
            }
            if !c.rate.is_finite() || c.rate <= 0.0 {
                return Err(Error::validation(format!(
                    "component {}: rate must be > 0, got {}",
                    i + 1,
                    c.rate
                )));
            }
        }

        let mut components = components;
        components.sort_by(|a, b| b.rate.total_cmp(&a.rate));
        for pair in components.windows(2) {
            if pair[0].rate == pair[1].rate {
                return Err(Error::validation(format!(
                    "rates must be pairwise distinct, got {} twice",
                    pair[0].rate
                )));
            }
        }

        let lead = components[0].rate;
        if (lead - 1.0).abs() > LEAD_RATE_TOLERANCE {
            return Err(Error::validation(format!(
                "leading rate must equal 1 (rates are relative to the fastest channel), got {lead}"
            )));
        }

        let sum: f64 = components.iter().map(|c| c.weight).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::validation(format!(
                "weights must sum to 1 within {WEIGHT_SUM_TOLERANCE}, got {sum}"
            )));
        }
        for c in &mut components {
            c.weight /= sum;
        }
        // Pin the last weight so the stored weights sum to exactly 1.0 under
        // plain left-to-right summation. With prefix = w_1 + ... + w_(n-1)
        // already a float, w_n = 1 - prefix makes prefix + w_n land within
        // half an ulp of 1 (exactly 1 when prefix >= 0.5, by Sterbenz), so
        // the total rounds to exactly 1.0. probability(0) then evaluates to
        // exactly 1.0 and entropy(0) to exactly 0.0, and construction is
        // idempotent: rebuilding from the stored weights reproduces them bit
        // for bit.
        let last = components.len() - 1;
        let prefix: f64 = components[..last].iter().map(|c| c.weight).sum();
        let residual = 1.0 - prefix;
        if residual > 0.0 {
            components[last].weight = residual;
        } else {
            // Only reachable when the last weight is smaller than the
            // rounding noise of the rest. Best effort: absorb the excess
            // into the largest weight and accept a total within an ulp of 1.
            let target = components
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.weight.total_cmp(&b.1.weight))
                .map(|(i, _)| i)
                .unwrap();
            let s: f64 = components.iter().map(|c| c.weight).sum();
            components[target].weight += 1.0 - s;
        }

        Ok(MultiExpModel { components })
    }

    /// The components, sorted by strictly decreasing rate, with weights
    /// renormalized to sum to 1.
    pub fn components(&self) -> &[ExpComponent] {
        &self.components
    }

    /// Survival probability `p(x0 | T)` at scaled time `t_scaled >= 0`.
    ///
    /// Returns a value in `(0, 1]`; extreme `T` may underflow to `0.0`.
    pub fn probability(&self, t_scaled: f64) -> Result<f64> {
        check_time("scaled time", t_scaled)?;
        Ok(self.probability_raw(t_scaled))
    }

    fn probability_raw(&self, t: f64) -> f64 {
        let p: f64 = self
            .components
            .iter()
            .map(|c| c.weight * (-c.rate * t).exp())
            .sum();
        // Rounding of the term sum can land a hair above 1; the true value
        // never exceeds 1.
        p.min(1.0)
    }

    /// Information entropy `H(T) = -ln p(x0 | T)` in nats at `t_scaled >= 0`.
    ///
    /// Once `p` underflows past `1e-280` the entropy is evaluated in a
    /// factored form around the slowest component, so it stays finite and
    /// accurate for scaled times far beyond 1e6.
    pub fn entropy(&self, t_scaled: f64) -> Result<f64> {
        check_time("scaled time", t_scaled)?;
        let n = self.components.len();
        if n == 1 {
            // Degenerate single-channel model: exact closed form.
            let c = self.components[0];
            return Ok(c.rate * t_scaled - c.weight.ln());
        }
        let p = self.probability_raw(t_scaled);
        if p >= DIRECT_LOG_FLOOR {
            let h = -p.ln();
            // -ln(1.0) is negative zero; report plain zero.
            Ok(if h == 0.0 { 0.0 } else { h })
        } else {
            // H = c_n T - ln A_n - ln(1 + sum_{i<n} (A_i/A_n) e^(-(c_i-c_n) T))
            let slowest = self.components[n - 1];
            let mut rest = 0.0;
            for c in &self.components[..n - 1] {
                rest += (c.weight / slowest.weight) * (-(c.rate - slowest.rate) * t_scaled).exp();
            }
            Ok(slowest.rate * t_scaled - slowest.weight.ln() - rest.ln_1p())
        }
    }

    /// Large-`T` entropy asymptote `H(T) ~= c_n T - ln A_n` set by the
    /// slowest component. Exact (not asymptotic) for single-component models.
    pub fn entropy_asymptote(&self, t_scaled: f64) -> f64 {
        let slowest = self.components[self.components.len() - 1];
        slowest.rate * t_scaled - slowest.weight.ln()
    }

    /// Mean residence time of the initial partition, in scaled time units:
    /// the probability-weighted mean of `T` under the density `-dp/dT`,
    ///
    /// ```text
    /// MRT = (sum_i A_i / c_i^2) / (sum_i A_i / c_i)
    /// ```
    pub fn mean_residence_time(&self) -> f64 {
        let zeroth: f64 = self.components.iter().map(|c| c.weight / c.rate).sum();
        let first: f64 = self
            .components
            .iter()
            .map(|c| c.weight / (c.rate * c.rate))
            .sum();
        first / zeroth
    }

    /// Entropy at `t_scaled` as a fraction of the entropy at `t_max`.
    ///
    /// Requires `t_max > 0` and `0 <= t_scaled <= t_max`. Returns exactly
    /// `0.0` at `T = 0` and exactly `1.0` at `T = t_max`.
    pub fn normalized_entropy(&self, t_scaled: f64, t_max: f64) -> Result<f64> {
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(Error::domain(format!("t_max must be > 0, got {t_max}")));
        }
        check_time("scaled time", t_scaled)?;
        if t_scaled > t_max {
            return Err(Error::domain(format!(
                "scaled time {t_scaled} exceeds t_max {t_max}"
            )));
        }
        let ratio = self.entropy(t_scaled)? / self.entropy(t_max)?;
        Ok(if ratio == 0.0 { 0.0 } else { ratio })
    }

    /// Sample-space size relative to the initial size: `s(T) = 1 / p(x0 | T)`.
    ///
    /// Overflows to infinity where `p` underflows; the figure emitters plot
    /// `log10 s = H / ln 10` instead, which never overflows.
    pub fn sample_space_size(&self, t_scaled: f64) -> Result<f64> {
        Ok(1.0 / self.probability(t_scaled)?)
    }
}

/// Convenience constructor from parallel `(weight, rate)` pairs.
impl TryFrom<Vec<(f64, f64)>> for MultiExpModel {
    type Error = Error;

    fn try_from(pairs: Vec<(f64, f64)>) -> Result<Self> {
        MultiExpModel::new(
            pairs
                .into_iter()
                .map(|(weight, rate)| ExpComponent { weight, rate })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Four-channel reference model used throughout the docs and figures.
    fn reference() -> MultiExpModel {
        MultiExpModel::try_from(vec![(0.4, 1.0), (0.3, 0.1), (0.2, 0.01), (0.1, 0.001)]).unwrap()
    }

    #[test]
    fn probability_is_exactly_one_at_origin() {
        assert_eq!(reference().probability(0.0).unwrap(), 1.0);
    }

    #[test]
    fn entropy_is_exactly_zero_at_origin() {
        let h = reference().entropy(0.0).unwrap();
        assert_eq!(h, 0.0);
        assert!(h.is_sign_positive(), "entropy at 0 should be +0.0");
    }

    #[test]
    fn reference_probability_at_ten() {
        // 0.4 e^-10 + 0.3 e^-1 + 0.2 e^-0.1 + 0.1 e^-0.01, evaluated directly.
        let p = reference().probability(10.0).unwrap();
        assert!((p - 0.39035445930544643).abs() <= 1e-15, "p = {p}");
    }

    #[test]
    fn single_component_degenerates_to_mono() {
        let m = MultiExpModel::try_from(vec![(1.0, 1.0)]).unwrap();
        assert_eq!(m.probability(3.0).unwrap(), (-3.0f64).exp());
        assert_eq!(m.entropy(5.0).unwrap(), 5.0);
        assert_eq!(m.entropy(0.0).unwrap(), 0.0);
    }

    #[test]
    fn entropy_tracks_asymptote_at_large_t() {
        let m = reference();
        let h = m.entropy(10_000.0).unwrap();
        let asym = m.entropy_asymptote(10_000.0);
        assert!((h - 12.302585092994045).abs() <= 1e-4, "H = {h}");
        assert!((h - asym).abs() <= 1e-9 * asym, "H = {h}, asymptote = {asym}");
    }

    #[test]
    fn asymptote_reference_values() {
        let m = reference();
        // c_n T - ln A_n with A_n = 0.1, c_n = 0.001. The stored A_n may sit
        // an ulp away from 0.1 after the weight sum is pinned to exactly 1.
        assert!((m.entropy_asymptote(0.0) - 2.3025850929940455).abs() <= 1e-13);
        assert!((m.entropy_asymptote(1000.0) - 3.3025850929940455).abs() <= 1e-12);
        let single = MultiExpModel::try_from(vec![(1.0, 1.0)]).unwrap();
        assert_eq!(single.entropy_asymptote(7.0), 7.0);
    }

    #[test]
    fn entropy_survives_extreme_scaled_time() {
        let m = reference();
        // p underflows far below 1e-280 here; the factored path must keep
        // the entropy on the asymptote.
        let t = 1.0e6;
        let h = m.entropy(t).unwrap();
        let asym = m.entropy_asymptote(t);
        assert!(h.is_finite());
        assert!((h - asym).abs() <= 1e-9 * asym, "H = {h}, asymptote = {asym}");
        assert_eq!(m.probability(t).unwrap(), 0.0);
    }

    #[test]
    fn mean_residence_time_reference() {
        // (sum A/c^2) / (sum A/c) = 102030.4 / 123.4
        let mrt = reference().mean_residence_time();
        let expected = 102030.4 / 123.4;
        assert!((mrt - expected).abs() <= 1e-12 * expected, "MRT = {mrt}");
    }

    #[test]
    fn mean_residence_time_single_component() {
        let m = MultiExpModel::try_from(vec![(1.0, 1.0)]).unwrap();
        assert!((m.mean_residence_time() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn mean_residence_time_two_components() {
        let m = MultiExpModel::try_from(vec![(0.5, 1.0), (0.5, 0.5)]).unwrap();
        // (0.5/1 + 0.5/0.25) / (0.5/1 + 0.5/0.5) = 2.5 / 1.5
        let expected = 2.5 / 1.5;
        assert!((m.mean_residence_time() - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn normalized_entropy_endpoints() {
        let m = reference();
        assert_eq!(m.normalized_entropy(0.0, 1000.0).unwrap(), 0.0);
        assert_eq!(m.normalized_entropy(1000.0, 1000.0).unwrap(), 1.0);
        let mid = m.normalized_entropy(500.0, 1000.0).unwrap();
        let expected = m.entropy(500.0).unwrap() / m.entropy(1000.0).unwrap();
        assert_eq!(mid, expected);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn normalized_entropy_rejects_bad_arguments() {
        let m = reference();
        assert!(m.normalized_entropy(1500.0, 1000.0).is_err());
        assert!(m.normalized_entropy(-1.0, 1000.0).is_err());
        assert!(m.normalized_entropy(1.0, 0.0).is_err());
        assert!(m.normalized_entropy(1.0, -5.0).is_err());
        assert!(m.normalized_entropy(1.0, f64::NAN).is_err());
    }

    #[test]
    fn sample_space_size_is_reciprocal_probability() {
        let m = reference();
        let p = m.probability(10.0).unwrap();
        assert_eq!(m.sample_space_size(10.0).unwrap(), 1.0 / p);
        assert_eq!(m.sample_space_size(0.0).unwrap(), 1.0);
    }

    #[test]
    fn weights_renormalize_within_tolerance() {
        // Sum = 1 + 3e-10, inside the tolerance: accepted and renormalized.
        let m = MultiExpModel::try_from(vec![(0.6 + 3e-10, 1.0), (0.4, 0.5)]).unwrap();
        let total: f64 = m.components().iter().map(|c| c.weight).sum();
        assert_eq!(total, 1.0);
        assert_eq!(m.probability(0.0).unwrap(), 1.0);
    }

    #[test]
    fn rejects_weight_sum_outside_tolerance() {
        let err = MultiExpModel::try_from(vec![(0.8, 1.0), (0.4, 0.5)]).unwrap_err();
        assert!(err.to_string().contains("sum to 1"), "{err}");
    }

    #[test]
    fn rejects_bad_components() {
        assert!(MultiExpModel::new(vec![]).is_err());
        assert!(MultiExpModel::try_from(vec![(1.0, 1.0), (0.0, 0.5)]).is_err());
        assert!(MultiExpModel::try_from(vec![(0.5, 1.0), (0.5, -0.5)]).is_err());
        // Leading rate must be 1.
        assert!(MultiExpModel::try_from(vec![(0.5, 2.0), (0.5, 0.5)]).is_err());
        assert!(MultiExpModel::try_from(vec![(1.0, 0.9)]).is_err());
        // Duplicate rates.
        assert!(MultiExpModel::try_from(vec![(0.5, 1.0), (0.5, 1.0)]).is_err());
        assert!(MultiExpModel::try_from(vec![(0.5, f64::NAN), (0.5, 1.0)]).is_err());
    }

    #[test]
    fn components_sorted_by_decreasing_rate() {
        let m = MultiExpModel::try_from(vec![(0.1, 0.001), (0.4, 1.0), (0.2, 0.01), (0.3, 0.1)])
            .unwrap();
        let rates: Vec<f64> = m.components().iter().map(|c| c.rate).collect();
        assert_eq!(rates, vec![1.0, 0.1, 0.01, 0.001]);
    }

    #[test]
    fn probability_strictly_decreases_on_grid() {
        let m = reference();
        let mut prev = f64::INFINITY;
        for i in 0..=200 {
            let t = i as f64 * 5.0;
            let p = m.probability(t).unwrap();
            assert!(p < prev, "p not strictly decreasing at T = {t}");
            prev = p;
        }
    }

    #[test]
    fn entropy_rejects_bad_time() {
        let m = reference();
        assert!(m.probability(-1.0).is_err());
        assert!(m.entropy(f64::NAN).is_err());
        assert!(m.entropy(f64::INFINITY).is_err());
    }
}
