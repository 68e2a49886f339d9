//! Canonical figure datasets.
//!
//! Each figure id maps to a fixed model and a default time grid; callers may
//! override the grid. The datasets cover, in order: single-exponential
//! expansion (1: size, 2: probability, 3: entropy, over `T = 0..10`); three
//! independent processes with rates 0.1/0.3/0.6 (4: probabilities,
//! 5: entropies, over `t = 0..10`); the four-channel reference mixture
//! (6: log10 size and 7: probability over `T = 0..1000`; 8: entropy over the
//! same range; 9: per-channel probabilities and 10: per-channel entropies
//! over `T = 0..100`; 11: entropies over `T = 0..10000` where the slowest
//! channel takes over; 12: entropy normalized to its value at `t_max`,
//! default 1000); a fitted broad-money example with `s0 = 7.5805`,
//! `lambda = 0.0555` (13: size, 14: entropy, over `t = 0..18`); and the
//! contraction of a 1000-alternative space (A1: size, A2: probability,
//! A3: entropy, over `t = 0..t_max`).
//!
//! Grid endpoints are generated as `start + i * step`; when the step divides
//! the span exactly the final point is snapped onto the requested end, so
//! boundary identities (probability 1 at a contraction horizon, normalized
//! entropy 1 at `t_max`) hold on the emitted rows.

use std::fmt;
use std::str::FromStr;

use crate::contraction::ContractionModel;
use crate::error::{Error, Result};
use crate::mono;
use crate::mono::MonoExpModel;
use crate::multiexp::MultiExpModel;
use crate::processes::ProcessSet;

/// Identifier of one canonical figure: `1`..`14` or `A1`..`A3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    A1,
    A2,
    A3,
}

impl FigureId {
    /// All ids in presentation order.
    pub fn all() -> [FigureId; 17] {
        use FigureId::*;
        [F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14, A1, A2, A3]
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FigureId::*;
        let name = match self {
            F1 => "1",
            F2 => "2",
            F3 => "3",
            F4 => "4",
            F5 => "5",
            F6 => "6",
            F7 => "7",
            F8 => "8",
            F9 => "9",
            F10 => "10",
            F11 => "11",
            F12 => "12",
            F13 => "13",
            F14 => "14",
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
        };
        f.write_str(name)
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_uppercase();
        FigureId::all()
            .into_iter()
            .find(|id| id.to_string() == normalized)
            .ok_or_else(|| {
                let valid: Vec<String> = FigureId::all().iter().map(|i| i.to_string()).collect();
                Error::validation(format!(
                    "unknown figure id '{s}' (valid: {})",
                    valid.join(", ")
                ))
            })
    }
}

/// An inclusive arithmetic time grid `start, start + step, ..` up to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    end: f64,
    step: f64,
}

impl Grid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() || !step.is_finite() {
            return Err(Error::validation("grid bounds and step must be finite"));
        }
        if start >= end {
            return Err(Error::validation(format!(
                "grid start must be < end, got {start}..{end}"
            )));
        }
        if step <= 0.0 {
            return Err(Error::validation(format!("grid step must be > 0, got {step}")));
        }
        Ok(Grid { start, end, step })
    }

    /// An `n`-interval grid spanning `[start, end]`.
    fn spanning(start: f64, end: f64, intervals: u32) -> Grid {
        Grid {
            start,
            end,
            step: (end - start) / intervals as f64,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Materializes the grid points. The final point is snapped to `end`
    /// when the step divides the span to within a relative 1e-9.
    pub fn values(&self) -> Vec<f64> {
        let span = self.end - self.start;
        let count = span / self.step;
        let intervals = if (count - count.round()).abs() <= 1e-9 * count.round().max(1.0) {
            count.round() as u64
        } else {
            count.floor() as u64
        };
        let mut points: Vec<f64> = (0..=intervals)
            .map(|i| self.start + i as f64 * self.step)
            .collect();
        let last = *points.last().expect("at least the start point");
        if (last - self.end).abs() <= 1e-9 * span {
            *points.last_mut().unwrap() = self.end;
        }
        points
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parses `start:end:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::validation(format!(
                "grid must be 'start:end:step', got '{s}'"
            )));
        }
        let number = |name: &str, raw: &str| -> Result<f64> {
            raw.trim()
                .parse::<f64>()
                .map_err(|_| Error::validation(format!("grid {name} '{raw}' is not a number")))
        };
        Grid::new(
            number("start", parts[0])?,
            number("end", parts[1])?,
            number("step", parts[2])?,
        )
    }
}

/// A materialized figure: column names plus one row per grid point. The
/// first column is always the time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: FigureId,
    pub title: String,
    pub x_label: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// The four-channel mixture used by figures 6 through 12.
pub fn reference_mixture() -> MultiExpModel {
    MultiExpModel::try_from(vec![(0.4, 1.0), (0.3, 0.1), (0.2, 0.01), (0.1, 0.001)])
        .expect("reference mixture is valid")
}

/// The three-process set used by figures 4 and 5.
pub fn reference_processes() -> ProcessSet {
    ProcessSet::new(vec![0.1, 0.3, 0.6]).expect("reference process set is valid")
}

/// The fitted broad-money growth model used by figures 13 and 14.
pub fn reference_growth() -> MonoExpModel {
    MonoExpModel::new(7.5805, 0.0555).expect("reference growth model is valid")
}

/// The 1000-alternative contraction used by figures A1 through A3.
pub fn reference_contraction() -> ContractionModel {
    ContractionModel::new(1000).expect("reference contraction is valid")
}

/// Default grid for a figure. `t_max` overrides the normalization horizon
/// (and therefore the default span) of figure 12.
pub fn default_grid(id: FigureId, t_max: Option<f64>) -> Grid {
    use FigureId::*;
    match id {
        F1 | F2 | F3 | F4 | F5 => Grid::spanning(0.0, 10.0, 200),
        F6 | F7 | F8 => Grid::spanning(0.0, 1000.0, 200),
        F9 | F10 => Grid::spanning(0.0, 100.0, 200),
        F11 => Grid::spanning(0.0, 10000.0, 200),
        F12 => Grid::spanning(0.0, t_max.unwrap_or(1000.0), 200),
        F13 | F14 => Grid::spanning(0.0, 18.0, 200),
        A1 | A2 | A3 => {
            let horizon = reference_contraction().t_max();
            Grid::spanning(0.0, horizon, 200)
        }
    }
}

/// Builds the dataset for a figure on the given grid. `t_max` only affects
/// figure 12 (normalization horizon, default 1000).
pub fn figure_data(id: FigureId, grid: &Grid, t_max: Option<f64>) -> Result<FigureData> {
    use FigureId::*;
    let times = grid.values();
    let col = |names: &[&str]| -> Vec<String> { names.iter().map(|s| s.to_string()).collect() };

    let (title, x_label, columns, rows) = match id {
        F1 => {
            let m = MonoExpModel::new(1.0, 1.0).expect("unit model");
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.sample_space_size(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Exponential expansion of the sample space".to_string(),
                "T",
                col(&["T", "size"]),
                rows,
            )
        }
        F2 => {
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, mono::probability(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Survival probability under exponential expansion".to_string(),
                "T",
                col(&["T", "probability"]),
                rows,
            )
        }
        F3 => {
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, mono::entropy(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Entropy growth under exponential expansion".to_string(),
                "T",
                col(&["T", "entropy"]),
                rows,
            )
        }
        F4 | F5 => {
            let set = reference_processes();
            let mut columns: Vec<String> = vec!["t".to_string()];
            let prefix = if id == F4 { "p" } else { "h" };
            for (i, _) in set.rates().iter().enumerate() {
                columns.push(format!("{prefix}_process_{}", i + 1));
            }
            columns.push(format!("{prefix}_combined"));
            let combined = set.combined_rate();
            let rows = times
                .iter()
                .map(|&t| {
                    let parts = set.decompose(t)?;
                    let mut row = vec![t];
                    if id == F4 {
                        row.extend(parts.iter().map(|p| p.probability));
                        row.push(mono::probability(combined * t)?);
                    } else {
                        row.extend(parts.iter().map(|p| p.entropy));
                        row.push(mono::entropy(combined * t)?);
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            let title = if id == F4 {
                "Probabilities of three independent processes".to_string()
            } else {
                "Entropies of three independent processes".to_string()
            };
            (title, "t", columns, rows)
        }
        F6 => {
            let m = reference_mixture();
            // log10 of the relative size 1/p, computed as H / ln 10 so that
            // it stays finite where p underflows.
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.entropy(t)? / std::f64::consts::LN_10]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Sample-space expansion of the four-channel mixture".to_string(),
                "T",
                col(&["T", "log10_size"]),
                rows,
            )
        }
        F7 => {
            let m = reference_mixture();
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.probability(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Survival probability of the four-channel mixture".to_string(),
                "T",
                col(&["T", "probability"]),
                rows,
            )
        }
        F8 => {
            let m = reference_mixture();
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.entropy(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Entropy of the four-channel mixture".to_string(),
                "T",
                col(&["T", "entropy"]),
                rows,
            )
        }
        F9 | F10 | F11 => {
            let m = reference_mixture();
            let mut columns: Vec<String> = vec!["T".to_string()];
            let entropy_lines = id != F9;
            let prefix = if entropy_lines { "h" } else { "p" };
            for i in 1..=m.components().len() {
                columns.push(format!("{prefix}_component_{i}"));
            }
            columns.push(format!("{prefix}_total"));
            let rows = times
                .iter()
                .map(|&t| {
                    let mut row = vec![t];
                    for c in m.components() {
                        if entropy_lines {
                            // Per-channel entropy line c_i T - ln A_i.
                            row.push(c.rate * t - c.weight.ln());
                        } else {
                            row.push(c.weight * (-c.rate * t).exp());
                        }
                    }
                    row.push(if entropy_lines {
                        m.entropy(t)?
                    } else {
                        m.probability(t)?
                    });
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            let title = match id {
                F9 => "Per-channel probability contributions".to_string(),
                F10 => "Per-channel entropy lines".to_string(),
                _ => "Entropy convergence to the slowest channel".to_string(),
            };
            (title, "T", columns, rows)
        }
        F12 => {
            let m = reference_mixture();
            let horizon = t_max.unwrap_or(1000.0);
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.normalized_entropy(t, horizon)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Entropy as a fraction of its horizon value".to_string(),
                "T",
                col(&["T", "normalized_entropy"]),
                rows,
            )
        }
        F13 => {
            let m = reference_growth();
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.sample_space_size(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Fitted broad-money growth".to_string(),
                "t (years from origin)",
                col(&["t", "size_usd_tn"]),
                rows,
            )
        }
        F14 => {
            let m = reference_growth();
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, mono::entropy(m.scaled_time(t))?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Entropy accumulated by broad-money growth".to_string(),
                "t (years from origin)",
                col(&["t", "entropy"]),
                rows,
            )
        }
        A1 => {
            let m = reference_contraction();
            // s(t) = s0 e^(-t ln 2), the reciprocal of the probability.
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, 1.0 / m.probability(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Contraction of a 1000-alternative space".to_string(),
                "t",
                col(&["t", "size"]),
                rows,
            )
        }
        A2 => {
            let m = reference_contraction();
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, m.probability(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Probability concentration under contraction".to_string(),
                "t",
                col(&["t", "probability"]),
                rows,
            )
        }
        A3 => {
            let rows = times
                .iter()
                .map(|&t| Ok(vec![t, crate::contraction::entropy(t)?]))
                .collect::<Result<Vec<_>>>()?;
            (
                "Entropy change under contraction".to_string(),
                "t",
                col(&["t", "entropy"]),
                rows,
            )
        }
    };

    Ok(FigureData {
        id,
        title,
        x_label: x_label.to_string(),
        columns,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_strings() {
        for id in FigureId::all() {
            let parsed: FigureId = id.to_string().parse().unwrap();
            assert_eq!(parsed, id);
        }
        assert_eq!("a2".parse::<FigureId>().unwrap(), FigureId::A2);
        let err = "99".parse::<FigureId>().unwrap_err();
        assert!(err.to_string().contains("A1"), "{err}");
    }

    #[test]
    fn grid_counts_and_endpoints() {
        let g = Grid::new(0.0, 10.0, 0.1).unwrap();
        let values = g.values();
        assert_eq!(values.len(), 101);
        assert_eq!(values[0], 0.0);
        assert_eq!(*values.last().unwrap(), 10.0);

        let g = Grid::new(0.0, 18.0, 18.0 / 200.0).unwrap();
        let values = g.values();
        assert_eq!(values.len(), 201);
        assert_eq!(*values.last().unwrap(), 18.0);

        // Step that does not divide the span: endpoint is not forced.
        let g = Grid::new(0.0, 1.0, 0.3).unwrap();
        assert_eq!(g.values(), vec![0.0, 0.3, 0.6, 0.8999999999999999]);
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(1.0, 1.0, 0.1).is_err());
        assert!(Grid::new(2.0, 1.0, 0.1).is_err());
        assert!(Grid::new(0.0, 1.0, 0.0).is_err());
        assert!(Grid::new(0.0, 1.0, -0.1).is_err());
        assert!(Grid::new(0.0, f64::INFINITY, 0.1).is_err());
    }

    #[test]
    fn grid_parses_from_colon_syntax() {
        let g: Grid = "0:10:0.1".parse().unwrap();
        assert_eq!(g, Grid::new(0.0, 10.0, 0.1).unwrap());
        assert!("0:10".parse::<Grid>().is_err());
        assert!("0:ten:0.1".parse::<Grid>().is_err());
    }

    #[test]
    fn entropy_figure_is_the_identity_line() {
        let grid = Grid::new(0.0, 10.0, 0.1).unwrap();
        let data = figure_data(FigureId::F3, &grid, None).unwrap();
        assert_eq!(data.rows.len(), 101);
        for row in &data.rows {
            assert_eq!(row[0], row[1]);
        }
    }

    #[test]
    fn probability_and_entropy_figures_are_consistent() {
        let grid = Grid::new(0.0, 10.0, 0.1).unwrap();
        let p = figure_data(FigureId::F2, &grid, None).unwrap();
        let h = figure_data(FigureId::F3, &grid, None).unwrap();
        for (pr, hr) in p.rows.iter().zip(&h.rows) {
            assert_eq!(pr[0], hr[0]);
            assert!((hr[1] + pr[1].ln()).abs() <= 1e-12 * hr[1].max(1.0));
        }
    }

    #[test]
    fn normalized_entropy_figure_ends_at_one() {
        let grid = default_grid(FigureId::F12, None);
        let data = figure_data(FigureId::F12, &grid, None).unwrap();
        assert_eq!(data.rows[0][1], 0.0);
        assert_eq!(data.rows.last().unwrap()[1], 1.0);
        for pair in data.rows.windows(2) {
            assert!(pair[1][1] >= pair[0][1], "normalized entropy must not decrease");
        }
    }

    #[test]
    fn default_grids_have_201_points() {
        for id in FigureId::all() {
            let grid = default_grid(id, None);
            let data = figure_data(id, &grid, None).unwrap();
            assert_eq!(data.rows.len(), 201, "figure {id}");
            assert_eq!(data.columns.len(), data.rows[0].len(), "figure {id}");
        }
    }

    #[test]
    fn contraction_figures_reach_the_horizon() {
        let grid = default_grid(FigureId::A2, None);
        let data = figure_data(FigureId::A2, &grid, None).unwrap();
        assert_eq!(data.rows[0][1], 0.001);
        let last = data.rows.last().unwrap();
        assert!((last[1] - 1.0).abs() <= 1e-9, "p(t_max) = {}", last[1]);
    }

    #[test]
    fn combined_process_figure_matches_identities() {
        let grid = default_grid(FigureId::F4, None);
        let p = figure_data(FigureId::F4, &grid, None).unwrap();
        let h = figure_data(FigureId::F5, &grid, None).unwrap();
        for (pr, hr) in p.rows.iter().zip(&h.rows) {
            let product: f64 = pr[1..4].iter().product();
            assert!((product - pr[4]).abs() <= 1e-12 * pr[4]);
            let sum: f64 = hr[1..4].iter().sum();
            assert!((sum - hr[4]).abs() <= 1e-12 * hr[4].max(1.0));
        }
    }
}
