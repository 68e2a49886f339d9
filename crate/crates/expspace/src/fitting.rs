//! Log-linear fitting of exponential growth to observed time series.
//!
//! Taking logarithms turns `v(t) = s0 * e^(lambda t)` into the straight line
//! `ln v = ln s0 + lambda t`, which is fitted by ordinary least squares. The
//! slope estimates the growth rate `lambda`, the exponential of the
//! intercept estimates `s0`, and the coefficient of determination is
//! reported in the fitted (log) space.

use crate::error::{check_time, Error, Result};

/// A strictly time-ordered series of positive observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    origin_label: String,
    points: Vec<(f64, f64)>,
}

impl TimeSeries {
    /// Builds a series from `(time, value)` points. Requires at least two
    /// points, strictly increasing times, and positive finite values.
    /// `origin_label` names the time origin (for example the calendar year
    /// that time zero corresponds to).
    pub fn new(origin_label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::validation(format!(
                "a series needs at least 2 points, got {}",
                points.len()
            )));
        }
        for (i, &(t, v)) in points.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::validation(format!("time of point {} is {t}", i + 1)));
            }
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::validation(format!(
                    "value at t = {t} must be > 0, got {v}"
                )));
            }
        }
        for pair in points.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::validation(format!(
                    "times must be strictly increasing, got {} after {}",
                    pair[1].0, pair[0].0
                )));
            }
        }
        Ok(TimeSeries {
            origin_label: origin_label.into(),
            points,
        })
    }

    /// The `(time, value)` points in increasing time order.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Human-readable name of the time origin.
    pub fn origin_label(&self) -> &str {
        &self.origin_label
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: the constructor requires two or more points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Result of a log-linear exponential fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Estimated initial size `exp(intercept)`.
    pub s0_hat: f64,
    /// Estimated growth rate (the fitted slope).
    pub lambda_hat: f64,
    /// Coefficient of determination in log space, clamped to `[0, 1]`.
    pub r_squared: f64,
    /// Per-point residuals `ln v_i - (ln s0_hat + lambda_hat t_i)`.
    pub residuals_log: Vec<f64>,
}

/// Fits `v(t) = s0 * e^(lambda t)` by ordinary least squares on `ln v`.
pub fn fit_mono_exponential(series: &TimeSeries) -> Result<FitResult> {
    let pts = series.points();
    let n = pts.len() as f64;
    let logs: Vec<f64> = pts.iter().map(|&(_, v)| v.ln()).collect();

    let mean_t = pts.iter().map(|&(t, _)| t).sum::<f64>() / n;
    let mean_y = logs.iter().sum::<f64>() / n;

    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&(t, _), &y) in pts.iter().zip(&logs) {
        sxx += (t - mean_t) * (t - mean_t);
        sxy += (t - mean_t) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::validation(
            "times have zero variance; the slope is undefined",
        ));
    }

    let lambda_hat = sxy / sxx;
    let intercept = mean_y - lambda_hat * mean_t;

    let residuals_log: Vec<f64> = pts
        .iter()
        .zip(&logs)
        .map(|(&(t, _), &y)| y - (intercept + lambda_hat * t))
        .collect();
    let ssr: f64 = residuals_log.iter().map(|r| r * r).sum();
    let sst: f64 = logs.iter().map(|&y| (y - mean_y) * (y - mean_y)).sum();
    let r_squared = if sst == 0.0 {
        1.0
    } else {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    };

    Ok(FitResult {
        s0_hat: intercept.exp(),
        lambda_hat,
        r_squared,
        residuals_log,
    })
}

/// Coefficient of determination of a fit in the raw (unlogged) value space.
///
/// Reported alongside the log-space value for transparency; unlike
/// [`FitResult::r_squared`] it can be negative for a poor fit.
pub fn raw_r_squared(series: &TimeSeries, fit: &FitResult) -> f64 {
    let pts = series.points();
    let mean_v = pts.iter().map(|&(_, v)| v).sum::<f64>() / pts.len() as f64;
    let ssr: f64 = pts
        .iter()
        .map(|&(t, v)| {
            let predicted = fit.s0_hat * (fit.lambda_hat * t).exp();
            (v - predicted) * (v - predicted)
        })
        .sum();
    let sst: f64 = pts.iter().map(|&(_, v)| (v - mean_v) * (v - mean_v)).sum();
    if sst == 0.0 {
        if ssr == 0.0 {
            1.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        1.0 - ssr / sst
    }
}

/// Annualized growth fraction `e^lambda - 1` implied by a continuous rate.
pub fn annual_growth_rate(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
    }
    Ok(lambda.exp_m1())
}

/// Entropy trajectory `H(t) = lambda_hat * t` implied by a fit, evaluated at
/// the given times (each must be `>= 0`).
pub fn entropy_series(fit: &FitResult, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    times
        .iter()
        .map(|&t| {
            check_time("time", t)?;
            Ok((t, fit.lambda_hat * t))
        })
        .collect()
}

/// Probability trajectory `p(t) = e^(-lambda_hat t)` implied by a fit.
pub fn probability_series(fit: &FitResult, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    times
        .iter()
        .map(|&t| {
            check_time("time", t)?;
            Ok((t, (-fit.lambda_hat * t).exp()))
        })
        .collect()
}
