//! Command-line interface: argument types and command execution.
//!
//! Every command renders its complete output as a single string, then writes
//! it to stdout or to `--out`. Identical inputs produce byte-identical
//! output. Errors go to stderr and exit nonzero (handled in `main`).

use std::f64::consts::LN_2;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::contraction::ContractionModel;
use crate::error::{Error, Result};
use crate::figures::{default_grid, figure_data, FigureData, FigureId, Grid};
use crate::fitting::{
    annual_growth_rate, entropy_series, fit_mono_exponential, probability_series, raw_r_squared,
};
use crate::ingest::{load_model, load_series, ModelConfig, OriginPolicy, SeriesFileSpec};
use crate::mono;
use crate::oracle::{mrt_quadrature, simulate_doubling, simulate_halving, QuadratureSpec};
use crate::report::{fmt_sig, tsv_table, REPORT_DIGITS};
use crate::svg::{LineChart, Series};

#[derive(Debug, Parser)]
#[command(
    name = "expspace",
    version,
    about = "Probability and information entropy of exponentially expanding sample spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Output style for figure emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    /// Tab-separated data table.
    Data,
    /// Self-contained SVG line chart.
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit exponential growth to a CSV time series and report the entropy
    /// parameters.
    Fit {
        /// CSV file with a header row.
        series: PathBuf,
        /// Name of the time column.
        #[arg(long, default_value = "year")]
        time_col: String,
        /// Name of the value column.
        #[arg(long, default_value = "value")]
        value_col: String,
        /// Raw time that becomes t = 0 (default: the earliest row).
        #[arg(long)]
        origin: Option<f64>,
        /// Also emit the fitted size/probability/entropy series over the
        /// observation window.
        #[arg(long)]
        emit_series: bool,
    },
    /// Evaluate a model file over a time grid.
    Model {
        /// Model config file (s0/lambda, process, or component entries).
        model: PathBuf,
        /// Evaluation grid as start:end:step.
        #[arg(long)]
        grid: Option<Grid>,
        /// Normalization horizon; adds a normalized-entropy column
        /// (multi-exponential models only).
        #[arg(long)]
        tmax: Option<f64>,
    },
    /// Mean residence time of a multi-exponential model.
    Mrt {
        /// Model config file with component entries.
        model: PathBuf,
        /// Cross-check the closed form against adaptive quadrature.
        #[arg(long)]
        verify: bool,
        /// Relative tolerance of the quadrature cross-check.
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
        /// Tail-truncation threshold of the quadrature cross-check.
        #[arg(long, default_value_t = 1e-9)]
        truncation: f64,
    },
    /// Enumerate a repeatedly doubled sample space and compare against the
    /// closed forms.
    Simulate {
        /// Number of doublings (at most 20).
        doublings: u32,
    },
    /// Trajectory of an exponentially contracting integer sample space.
    Contract {
        /// Initial number of alternatives (at least 2).
        s0: u64,
        /// Cross-check integer halvings against the closed form.
        #[arg(long)]
        verify: bool,
    },
    /// Emit a canonical figure dataset as a data table or SVG chart.
    Figures {
        /// Figure id: 1..14, A1, A2, or A3.
        id: String,
        /// Evaluation grid as start:end:step.
        #[arg(long)]
        grid: Option<Grid>,
        /// Output style.
        #[arg(long, value_enum, default_value_t = Style::Data)]
        style: Style,
        /// Normalization horizon for figure 12 (default 1000).
        #[arg(long)]
        tmax: Option<f64>,
    },
}

/// Runs a parsed invocation, writing the output to `--out` or stdout.
pub fn dispatch(cli: Cli) -> Result<()> {
    let output = execute(&cli.command)?;
    match &cli.out {
        Some(path) => fs::write(path, output).map_err(|e| Error::io(path, e)),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

/// Renders a command's complete output.
pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Fit {
            series,
            time_col,
            value_col,
            origin,
            emit_series,
        } => cmd_fit(series, time_col, value_col, *origin, *emit_series),
        Command::Model { model, grid, tmax } => cmd_model(model, *grid, *tmax),
        Command::Mrt {
            model,
            verify,
            rel_tol,
            truncation,
        } => cmd_mrt(model, *verify, *rel_tol, *truncation),
        Command::Simulate { doublings } => cmd_simulate(*doublings),
        Command::Contract { s0, verify } => cmd_contract(*s0, *verify),
        Command::Figures {
            id,
            grid,
            style,
            tmax,
        } => cmd_figures(id, *grid, *style, *tmax),
    }
}

fn report_line(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(key);
    out.push_str(": ");
    out.push_str(value.as_ref());
    out.push('\n');
}

fn num(value: f64) -> String {
    fmt_sig(value, REPORT_DIGITS)
}

fn cmd_fit(
    series_path: &Path,
    time_col: &str,
    value_col: &str,
    origin: Option<f64>,
    emit_series: bool,
) -> Result<String> {
    let policy = match origin {
        Some(v) => OriginPolicy::Explicit(v),
        None => OriginPolicy::FirstRowAsZero,
    };
    let spec = SeriesFileSpec::new(series_path, time_col, value_col, policy)?;
    let series = load_series(&spec)?;
    let fit = fit_mono_exponential(&series)?;
    let growth = annual_growth_rate(fit.lambda_hat)?;

    let mut out = String::new();
    report_line(&mut out, "series", series_path.display().to_string());
    report_line(&mut out, "points", series.len().to_string());
    report_line(&mut out, "origin", series.origin_label());
    report_line(&mut out, "s0_hat", num(fit.s0_hat));
    report_line(&mut out, "lambda_hat", num(fit.lambda_hat));
    report_line(
        &mut out,
        "annual_growth_rate",
        format!("{:.2}% ({} per year)", growth * 100.0, num(growth)),
    );
    report_line(&mut out, "r_squared_log", num(fit.r_squared));
    report_line(&mut out, "r_squared_raw", num(raw_r_squared(&series, &fit)));

    if emit_series {
        let times: Vec<f64> = series.points().iter().map(|&(t, _)| t).collect();
        let h = entropy_series(&fit, &times)?;
        let p = probability_series(&fit, &times)?;
        let rows: Vec<Vec<f64>> = series
            .points()
            .iter()
            .zip(h.iter().zip(&p))
            .map(|(&(t, v), (&(_, hv), &(_, pv)))| {
                vec![t, v, fit.s0_hat * (fit.lambda_hat * t).exp(), pv, hv]
            })
            .collect();
        out.push('\n');
        out.push_str(&tsv_table(
            &[
                "t".to_string(),
                "value".to_string(),
                "fitted".to_string(),
                "probability".to_string(),
                "entropy".to_string(),
            ],
            &rows,
        ));
    }
    Ok(out)
}

fn cmd_model(model_path: &Path, grid: Option<Grid>, tmax: Option<f64>) -> Result<String> {
    let config = load_model(model_path)?;
    if tmax.is_some() && !matches!(config, ModelConfig::MultiExp(_)) {
        return Err(Error::validation(format!(
            "--tmax applies only to multi-exponential models, this file holds a {} model",
            config.kind()
        )));
    }

    match config {
        ModelConfig::Mono(m) => {
            let grid = grid.unwrap_or_else(|| "0:10:0.05".parse().expect("static grid"));
            let mut rows = Vec::new();
            for t in grid.values() {
                let scaled = m.scaled_time(t);
                rows.push(vec![
                    t,
                    scaled,
                    m.sample_space_size(t)?,
                    mono::probability(scaled)?,
                    mono::entropy(scaled)?,
                ]);
            }
            Ok(tsv_table(
                &["t", "scaled_time", "size", "probability", "entropy"]
                    .map(String::from),
                &rows,
            ))
        }
        ModelConfig::Processes(set) => {
            let grid = grid.unwrap_or_else(|| "0:10:0.05".parse().expect("static grid"));
            let mut columns: Vec<String> = vec!["t".to_string()];
            for i in 1..=set.len() {
                columns.push(format!("p_process_{i}"));
            }
            columns.push("p_combined".to_string());
            for i in 1..=set.len() {
                columns.push(format!("h_process_{i}"));
            }
            columns.push("h_combined".to_string());
            let combined = set.combined_rate();
            let mut rows = Vec::new();
            for t in grid.values() {
                let parts = set.decompose(t)?;
                let mut row = vec![t];
                row.extend(parts.iter().map(|p| p.probability));
                row.push(mono::probability(combined * t)?);
                row.extend(parts.iter().map(|p| p.entropy));
                row.push(mono::entropy(combined * t)?);
                rows.push(row);
            }
            Ok(tsv_table(&columns, &rows))
        }
        ModelConfig::MultiExp(m) => {
            let grid = grid.unwrap_or_else(|| "0:1000:5".parse().expect("static grid"));
            let mut columns: Vec<String> = vec![
                "T".to_string(),
                "size".to_string(),
                "probability".to_string(),
                "entropy".to_string(),
                "entropy_asymptote".to_string(),
            ];
            for i in 1..=m.components().len() {
                columns.push(format!("p_component_{i}"));
            }
            if tmax.is_some() {
                columns.push("normalized_entropy".to_string());
            }
            let mut rows = Vec::new();
            for t in grid.values() {
                let mut row = vec![
                    t,
                    m.sample_space_size(t)?,
                    m.probability(t)?,
                    m.entropy(t)?,
                    m.entropy_asymptote(t),
                ];
                for c in m.components() {
                    row.push(c.weight * (-c.rate * t).exp());
                }
                if let Some(horizon) = tmax {
                    row.push(m.normalized_entropy(t, horizon)?);
                }
                rows.push(row);
            }
            Ok(tsv_table(&columns, &rows))
        }
    }
}

fn cmd_mrt(model_path: &Path, verify: bool, rel_tol: f64, truncation: f64) -> Result<String> {
    let config = load_model(model_path)?;
    let ModelConfig::MultiExp(m) = config else {
        return Err(Error::validation(format!(
            "mean residence time needs a multi-exponential model, this file holds a {} model",
            config.kind()
        )));
    };
    let closed = m.mean_residence_time();

    let mut out = String::new();
    report_line(&mut out, "components", m.components().len().to_string());
    report_line(&mut out, "mrt_closed_form", num(closed));
    if verify {
        let spec = QuadratureSpec::new(rel_tol, truncation)?;
        let quad = mrt_quadrature(&m, &spec)?;
        report_line(&mut out, "mrt_quadrature", num(quad));
        report_line(
            &mut out,
            "relative_difference",
            fmt_sig(((quad - closed) / closed).abs(), 3),
        );
    }
    Ok(out)
}

fn cmd_simulate(doublings: u32) -> Result<String> {
    let (p, h) = simulate_doubling(doublings)?;
    let p_closed = 0.5f64.powi(doublings as i32);
    let h_closed = doublings as f64 * LN_2;

    let mut out = String::new();
    report_line(&mut out, "doublings", doublings.to_string());
    report_line(&mut out, "partitions", (1u64 << doublings).to_string());
    report_line(&mut out, "probability_enumerated", num(p));
    report_line(&mut out, "probability_closed_form", num(p_closed));
    report_line(&mut out, "probability_abs_diff", fmt_sig((p - p_closed).abs(), 3));
    report_line(&mut out, "entropy_enumerated", num(h));
    report_line(&mut out, "entropy_closed_form", num(h_closed));
    report_line(&mut out, "entropy_abs_diff", fmt_sig((h - h_closed).abs(), 3));
    Ok(out)
}

fn cmd_contract(s0: u64, verify: bool) -> Result<String> {
    let model = ContractionModel::new(s0)?;

    let mut out = String::new();
    report_line(&mut out, "s0", s0.to_string());
    report_line(&mut out, "t_max", num(model.t_max()));
    out.push('\n');

    // Integer steps, then the horizon itself (where p reaches 1).
    let mut times: Vec<f64> = (0..=model.t_max() as u64).map(|n| n as f64).collect();
    if *times.last().expect("nonempty") < model.t_max() {
        times.push(model.t_max());
    }
    let rows: Vec<Vec<f64>> = times
        .iter()
        .map(|&t| {
            Ok(vec![
                t,
                1.0 / model.probability(t)?,
                model.probability(t)?,
                model.entropy(t)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    out.push_str(&tsv_table(
        &["t", "size", "probability", "entropy"].map(String::from),
        &rows,
    ));

    if verify {
        let mut rows = Vec::new();
        let mut n = 0u32;
        while let Some(halvings) = 1u64.checked_shl(n) {
            if halvings > s0 || s0 % halvings != 0 {
                break;
            }
            let enumerated = simulate_halving(s0, n)?;
            let closed = model.probability(n as f64)?;
            rows.push(vec![n as f64, closed, enumerated, (closed - enumerated).abs()]);
            n += 1;
        }
        out.push('\n');
        out.push_str("verify (integer halvings where 2^n divides s0):\n");
        out.push_str(&tsv_table(
            &["n", "closed_form", "enumerated", "abs_diff"].map(String::from),
            &rows,
        ));
    }
    Ok(out)
}

fn cmd_figures(id: &str, grid: Option<Grid>, style: Style, tmax: Option<f64>) -> Result<String> {
    let id: FigureId = id.parse()?;
    let grid = grid.unwrap_or_else(|| default_grid(id, tmax));
    let data = figure_data(id, &grid, tmax)?;
    match style {
        Style::Data => Ok(tsv_table(&data.columns, &data.rows)),
        Style::Svg => Ok(render_chart(&data)),
    }
}

fn render_chart(data: &FigureData) -> String {
    let series: Vec<Series> = data
        .columns
        .iter()
        .enumerate()
        .skip(1)
        .map(|(col, label)| Series {
            label: label.clone(),
            points: data.rows.iter().map(|row| (row[0], row[col])).collect(),
        })
        .collect();
    let chart = LineChart {
        title: format!("Figure {}: {}", data.id, data.title),
        x_label: data.x_label.clone(),
        y_label: if data.columns.len() == 2 {
            data.columns[1].clone()
        } else {
            "value".to_string()
        },
        series,
    };
    chart.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simulate_report_shows_agreement() {
        let out = execute(&Command::Simulate { doublings: 2 }).unwrap();
        assert!(out.contains("partitions: 4"), "{out}");
        assert!(out.contains("probability_enumerated: 0.25"), "{out}");
        assert!(out.contains("probability_abs_diff: 0"), "{out}");
        assert!(out.contains("entropy_enumerated: 1.38629"), "{out}");
    }

    #[test]
    fn simulate_rejects_past_the_bound() {
        let err = execute(&Command::Simulate { doublings: 21 }).unwrap_err();
        assert!(err.to_string().contains("enumeration bound"), "{err}");
    }

    #[test]
    fn contract_reaches_probability_one() {
        let out = execute(&Command::Contract {
            s0: 1000,
            verify: true,
        })
        .unwrap();
        assert!(out.contains("t_max: 9.96578"), "{out}");
        let last_data_line = out
            .lines()
            .take_while(|l| !l.starts_with("verify"))
            .filter(|l| !l.is_empty())
            .last()
            .unwrap()
            .to_string();
        assert!(last_data_line.starts_with("9.96578428"), "{last_data_line}");
        assert!(last_data_line.ends_with("-6.90775528"), "{last_data_line}");
        // 1000 = 8 * 125: halvings n = 0..3 are exact.
        assert!(out.contains("verify"), "{out}");
        let verify_rows: Vec<&str> = out
            .lines()
            .skip_while(|l| !l.starts_with("verify"))
            .skip(2)
            .collect();
        assert_eq!(verify_rows.len(), 4, "{out}");
    }

    #[test]
    fn figures_data_is_deterministic() {
        let cmd = Command::Figures {
            id: "3".to_string(),
            grid: Some("0:10:0.1".parse().unwrap()),
            style: Style::Data,
            tmax: None,
        };
        let first = execute(&cmd).unwrap();
        let second = execute(&cmd).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.lines().count(), 102); // header + 101 rows
    }

    #[test]
    fn figures_svg_has_a_series_per_column() {
        let cmd = Command::Figures {
            id: "5".to_string(),
            grid: None,
            style: Style::Svg,
            tmax: None,
        };
        let svg = execute(&cmd).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<polyline").count(), 4, "3 processes + combined");
    }

    #[test]
    fn figures_rejects_unknown_ids() {
        let err = execute(&Command::Figures {
            id: "x9".to_string(),
            grid: None,
            style: Style::Data,
            tmax: None,
        })
        .unwrap_err();
        assert!(err.to_string().contains("unknown figure id"), "{err}");
        assert!(err.to_string().contains("A3"), "{err}");
    }
}
