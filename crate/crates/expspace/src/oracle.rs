//! Brute-force cross-checks for the closed-form results.
//!
//! Everything in this module deliberately avoids the closed forms it is used
//! to verify: probabilities come from explicitly enumerated partitions and
//! the mean residence time from numerical quadrature. Tests compare these
//! against the analytic expressions elsewhere in the crate.

use crate::error::{Error, Result};
use crate::multiexp::MultiExpModel;

/// Largest supported number of doublings; `2^20` partitions are enumerated
/// explicitly, one `f64` each.
pub const MAX_DOUBLINGS: u32 = 20;

/// Total subinterval budget shared by the two integrals of one quadrature
/// run.
const QUADRATURE_BUDGET: u64 = 1_000_000;

/// Panels bisected beyond this depth are accepted as-is; their width is
/// already at the limit of `f64` resolution.
const MAX_BISECTION_DEPTH: u32 = 60;

/// An explicitly enumerated table of equal partitions produced by repeated
/// doubling of a sample space.
#[derive(Debug, Clone)]
pub struct PartitionState {
    doublings: u32,
    partitions: Vec<f64>,
}

impl PartitionState {
    /// Starts from a single partition of probability 1 and splits every
    /// partition in two `n` times, halving the per-partition probability at
    /// each step. `n` is capped at [`MAX_DOUBLINGS`].
    pub fn after_doublings(n: u32) -> Result<Self> {
        if n > MAX_DOUBLINGS {
            return Err(Error::domain(format!(
                "doubling count {n} exceeds the enumeration bound {MAX_DOUBLINGS} \
                 (2^{MAX_DOUBLINGS} partitions)"
            )));
        }
        let mut partitions = vec![1.0f64];
        for _ in 0..n {
            let mut next = Vec::with_capacity(partitions.len() * 2);
            for &p in &partitions {
                let half = p * 0.5;
                next.push(half);
                next.push(half);
            }
            partitions = next;
        }
        Ok(PartitionState { doublings: n, partitions })
    }

    /// Number of doublings performed.
    pub fn doublings(&self) -> u32 {
        self.doublings
    }

    /// Number of partitions, `2^n`.
    pub fn partition_count(&self) -> u64 {
        self.partitions.len() as u64
    }

    /// Probability carried by one partition. All partitions are equal by
    /// construction; this is checked before reading the first.
    pub fn partition_probability(&self) -> f64 {
        let first = self.partitions[0];
        assert!(
            self.partitions.iter().all(|&p| p == first),
            "partitions diverged during enumeration"
        );
        first
    }

    /// Shannon entropy `sum(-p ln p)` over all partitions, in nats, summed
    /// with Kahan compensation so that a million-term sum stays well below
    /// the comparison tolerances.
    pub fn shannon_entropy(&self) -> f64 {
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for &p in &self.partitions {
            let term = -(p * p.ln()) - carry;
            let next = sum + term;
            carry = (next - sum) - term;
            sum = next;
        }
        if sum == 0.0 {
            0.0
        } else {
            sum
        }
    }
}

/// Enumerates the space after `n` doublings and returns
/// `(partition probability, Shannon entropy in nats)`.
///
/// The closed forms these must match are `(1/2)^n` and `n ln 2`.
pub fn simulate_doubling(n: u32) -> Result<(f64, f64)> {
    let state = PartitionState::after_doublings(n)?;
    Ok((state.partition_probability(), state.shannon_entropy()))
}

/// Probability of the initial outcome after halving a space of `s0` integer
/// alternatives `n` times.
///
/// When `2^n` divides `s0` the halving is carried out on the integer
/// interval itself; otherwise the continuous value `2^n / s0` is returned.
/// Requires `2^n <= s0`.
pub fn simulate_halving(s0: u64, n: u32) -> Result<f64> {
    if s0 < 2 {
        return Err(Error::validation(format!(
            "initial size must be an integer >= 2, got {s0}"
        )));
    }
    let Some(halvings) = 1u64.checked_shl(n) else {
        return Err(Error::domain(format!(
            "cannot halve a space of {s0} alternatives {n} times"
        )));
    };
    if halvings > s0 {
        return Err(Error::domain(format!(
            "cannot halve a space of {s0} alternatives {n} times (2^{n} > {s0})"
        )));
    }
    if s0 % halvings == 0 {
        // Explicit integer halving: shrink the interval n times, then read
        // the probability of landing in a one-alternative slot.
        let mut remaining = s0;
        for _ in 0..n {
            remaining /= 2;
        }
        Ok(1.0 / remaining as f64)
    } else {
        Ok(halvings as f64 / s0 as f64)
    }
}

/// Controls for [`mrt_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    relative_tolerance: f64,
    truncation_threshold: f64,
}

impl QuadratureSpec {
    /// `relative_tolerance` bounds the quadrature error relative to each
    /// integral's magnitude and must lie in `(0, 1e-2]`;
    /// `truncation_threshold` bounds the analytic tail remainder beyond the
    /// truncation point and must lie in `(0, 1e-6]`.
    pub fn new(relative_tolerance: f64, truncation_threshold: f64) -> Result<Self> {
        if !(relative_tolerance > 0.0 && relative_tolerance <= 1e-2) {
            return Err(Error::validation(format!(
                "relative tolerance must be in (0, 1e-2], got {relative_tolerance}"
            )));
        }
        if !(truncation_threshold > 0.0 && truncation_threshold <= 1e-6) {
            return Err(Error::validation(format!(
                "truncation threshold must be in (0, 1e-6], got {truncation_threshold}"
            )));
        }
        Ok(QuadratureSpec {
            relative_tolerance,
            truncation_threshold,
        })
    }

    pub fn relative_tolerance(&self) -> f64 {
        self.relative_tolerance
    }

    pub fn truncation_threshold(&self) -> f64 {
        self.truncation_threshold
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            relative_tolerance: 1e-6,
            truncation_threshold: 1e-9,
        }
    }
}

/// Mean residence time by adaptive Simpson quadrature of
/// `int T p(T) dT / int p(T) dT` over `[0, inf)`.
///
/// Both integrals are truncated where every component's analytic tail drops
/// below the truncation threshold; the tails are then added back in closed
/// form. Cross-checks [`MultiExpModel::mean_residence_time`].
pub fn mrt_quadrature(model: &MultiExpModel, spec: &QuadratureSpec) -> Result<f64> {
    let components: Vec<(f64, f64)> = model
        .components()
        .iter()
        .map(|c| (c.weight, c.rate))
        .collect();
    let p = |t: f64| -> f64 {
        components
            .iter()
            .map(|&(a, c)| a * (-c * t).exp())
            .sum()
    };
    let tp = |t: f64| t * p(t);

    // Truncate where the analytic remainders of both integrals are below
    // threshold for every component:
    //   int_t^inf A e^(-cT) dT   = (A/c) e^(-ct)
    //   int_t^inf T A e^(-cT) dT = A e^(-ct) (t/c + 1/c^2)
    let mut t_cut = 1.0f64;
    let tails_small = |t: f64| {
        components.iter().all(|&(a, c)| {
            let decay = (-c * t).exp();
            (a / c) * decay <= spec.truncation_threshold
                && a * decay * (t / c + 1.0 / (c * c)) <= spec.truncation_threshold
        })
    };
    while !tails_small(t_cut) {
        t_cut *= 2.0;
        if t_cut > 1e12 {
            return Err(Error::numerical(
                "failed to locate a truncation point for the residence-time integrals",
            ));
        }
    }

    let mut budget = QUADRATURE_BUDGET;
    let denom_scale = composite_simpson(&p, 0.0, t_cut, 512);
    let num_scale = composite_simpson(&tp, 0.0, t_cut, 512);
    let denom = adaptive_simpson(
        &p,
        0.0,
        t_cut,
        spec.relative_tolerance * denom_scale.abs().max(f64::MIN_POSITIVE),
        &mut budget,
    )?;
    let num = adaptive_simpson(
        &tp,
        0.0,
        t_cut,
        spec.relative_tolerance * num_scale.abs().max(f64::MIN_POSITIVE),
        &mut budget,
    )?;

    let tail_denom: f64 = components
        .iter()
        .map(|&(a, c)| (a / c) * (-c * t_cut).exp())
        .sum();
    let tail_num: f64 = components
        .iter()
        .map(|&(a, c)| a * (-c * t_cut).exp() * (t_cut / c + 1.0 / (c * c)))
        .sum();

    Ok((num + tail_num) / (denom + tail_denom))
}

fn simpson(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

fn composite_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: u32) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        let x1 = x0 + h;
        let xm = 0.5 * (x0 + x1);
        total += simpson(f(x0), f(xm), f(x1), h);
    }
    total
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tolerance: f64,
    depth: u32,
}

/// Adaptive Simpson integration with an explicit work stack. Each panel is
/// accepted once the classic `15 eps` criterion holds, with the Richardson
/// term `delta / 15` folded into the result. Every processed panel consumes
/// one unit of `budget`; exhausting it is an error.
fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tolerance: f64,
    budget: &mut u64,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(fa, fm, fb, b - a),
        tolerance,
        depth: 0,
    }];
    let mut total = 0.0f64;

    while let Some(panel) = stack.pop() {
        if *budget == 0 {
            return Err(Error::numerical(format!(
                "quadrature budget of {QUADRATURE_BUDGET} subintervals exhausted \
                 (stuck near [{:.6e}, {:.6e}], partial integral {total:.6e})",
                panel.a, panel.b
            )));
        }
        *budget -= 1;

        let m = 0.5 * (panel.a + panel.b);
        let lm = 0.5 * (panel.a + m);
        let rm = 0.5 * (m + panel.b);
        let (flm, frm) = (f(lm), f(rm));
        if !flm.is_finite() || !frm.is_finite() {
            return Err(Error::numerical(format!(
                "integrand is not finite inside [{:.6e}, {:.6e}]",
                panel.a, panel.b
            )));
        }
        let left = simpson(panel.fa, flm, panel.fm, m - panel.a);
        let right = simpson(panel.fm, frm, panel.fb, panel.b - m);
        let delta = left + right - panel.whole;

        if delta.abs() <= 15.0 * panel.tolerance || panel.depth >= MAX_BISECTION_DEPTH {
            total += left + right + delta / 15.0;
        } else {
            stack.push(Panel {
                a: panel.a,
                b: m,
                fa: panel.fa,
                fm: flm,
                fb: panel.fm,
                whole: left,
                tolerance: panel.tolerance * 0.5,
                depth: panel.depth + 1,
            });
            stack.push(Panel {
                a: m,
                b: panel.b,
                fa: panel.fm,
                fm: frm,
                fb: panel.fb,
                whole: right,
                tolerance: panel.tolerance * 0.5,
                depth: panel.depth + 1,
            });
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn reference() -> MultiExpModel {
        MultiExpModel::try_from(vec![(0.4, 1.0), (0.3, 0.1), (0.2, 0.01), (0.1, 0.001)]).unwrap()
    }

    #[test]
    fn doubling_starts_trivial() {
        assert_eq!(simulate_doubling(0).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn doubling_two_steps() {
        let (p, h) = simulate_doubling(2).unwrap();
        assert_eq!(p, 0.25);
        assert!((h - 2.0 * LN_2).abs() <= 1e-9, "H = {h}");
    }

    #[test]
    fn doubling_ten_steps() {
        let (p, h) = simulate_doubling(10).unwrap();
        assert_eq!(p, 9.765625e-4);
        assert!((h - 10.0 * LN_2).abs() <= 1e-9, "H = {h}");
    }

    #[test]
    fn doubling_rejects_past_bound() {
        let err = simulate_doubling(MAX_DOUBLINGS + 1).unwrap_err();
        assert!(err.to_string().contains("enumeration bound"), "{err}");
    }

    #[test]
    fn partition_table_is_consistent() {
        for n in [0u32, 1, 5, 12] {
            let state = PartitionState::after_doublings(n).unwrap();
            assert_eq!(state.partition_count(), 1u64 << n);
            let product = state.partition_probability() * state.partition_count() as f64;
            assert!((product - 1.0).abs() <= 1e-12, "n = {n}: p * count = {product}");
        }
    }

    #[test]
    fn halving_reads_integer_intervals() {
        assert_eq!(simulate_halving(1000, 0).unwrap(), 0.001);
        assert_eq!(simulate_halving(8, 3).unwrap(), 1.0);
        assert_eq!(simulate_halving(1024, 5).unwrap(), 0.03125);
        // 8 does not divide 1000: continuous fallback 8/1000.
        assert_eq!(simulate_halving(1000, 3).unwrap(), 0.008);
    }

    #[test]
    fn halving_rejects_exhausted_space() {
        assert!(simulate_halving(7, 3).is_err());
        assert!(simulate_halving(1, 0).is_err());
        assert!(simulate_halving(1000, 200).is_err());
    }

    #[test]
    fn halving_matches_contraction_on_divisible_steps() {
        let model = crate::contraction::ContractionModel::new(1024).unwrap();
        for n in 0..=10u32 {
            let enumerated = simulate_halving(1024, n).unwrap();
            let closed = model.probability(n as f64).unwrap();
            assert!(
                (enumerated - closed).abs() <= 1e-12 * closed.max(f64::MIN_POSITIVE),
                "n = {n}: {enumerated} vs {closed}"
            );
        }
    }

    #[test]
    fn quadrature_spec_validates() {
        assert!(QuadratureSpec::new(1e-6, 1e-9).is_ok());
        assert!(QuadratureSpec::new(0.0, 1e-9).is_err());
        assert!(QuadratureSpec::new(0.1, 1e-9).is_err());
        assert!(QuadratureSpec::new(1e-6, 0.0).is_err());
        assert!(QuadratureSpec::new(1e-6, 1e-3).is_err());
        let d = QuadratureSpec::default();
        assert_eq!(d.relative_tolerance(), 1e-6);
        assert_eq!(d.truncation_threshold(), 1e-9);
    }

    #[test]
    fn quadrature_single_component() {
        let m = MultiExpModel::try_from(vec![(1.0, 1.0)]).unwrap();
        let mrt = mrt_quadrature(&m, &QuadratureSpec::default()).unwrap();
        assert!((mrt - 1.0).abs() <= 1e-6, "MRT = {mrt}");
    }

    #[test]
    fn quadrature_matches_closed_form_on_reference() {
        let m = reference();
        let mrt = mrt_quadrature(&m, &QuadratureSpec::default()).unwrap();
        let closed = m.mean_residence_time();
        assert!(
            (mrt - closed).abs() <= 1e-3 * closed,
            "quadrature {mrt} vs closed form {closed}"
        );
    }

    #[test]
    fn quadrature_two_components() {
        let m = MultiExpModel::try_from(vec![(0.5, 1.0), (0.5, 0.5)]).unwrap();
        let mrt = mrt_quadrature(&m, &QuadratureSpec::default()).unwrap();
        let closed = 2.5 / 1.5;
        assert!((mrt - closed).abs() <= 1e-3 * closed, "MRT = {mrt}");
    }

    #[test]
    fn quadrature_insensitive_to_truncation_threshold() {
        let m = reference();
        let loose = mrt_quadrature(&m, &QuadratureSpec::new(1e-6, 1e-6).unwrap()).unwrap();
        let tight = mrt_quadrature(&m, &QuadratureSpec::new(1e-6, 1e-12).unwrap()).unwrap();
        assert!(
            (loose - tight).abs() <= 1e-4 * tight,
            "threshold sensitivity: {loose} vs {tight}"
        );
    }

    #[test]
    fn adaptive_simpson_exhausts_budget_loudly() {
        // Structure on a 1e-6 scale cannot be resolved within ten panels.
        let wiggle = |t: f64| (1e6 * t).sin();
        let mut budget = 10u64;
        let err = adaptive_simpson(&wiggle, 0.0, 1.0, 1e-15, &mut budget).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("budget"), "{message}");
        assert!(message.contains("stuck near"), "{message}");
    }

    #[test]
    fn adaptive_simpson_known_integral() {
        let mut budget = QUADRATURE_BUDGET;
        let value = adaptive_simpson(&|t: f64| t * t, 0.0, 3.0, 1e-12, &mut budget).unwrap();
        assert!((value - 9.0).abs() <= 1e-9, "int t^2 = {value}");
    }
}
