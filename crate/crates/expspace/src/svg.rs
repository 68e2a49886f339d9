//! Minimal self-contained SVG 1.1 line charts.
//!
//! No external renderer is involved: the output is a standalone document
//! with axes, tick labels, one polyline per series, and a legend. Intended
//! for quick visual inspection of the emitted figure data.

use std::fmt::Write as _;

use crate::report::{fmt_sig, REPORT_DIGITS};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 180.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 62.0;
const TICKS: usize = 6;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
];

/// One named polyline.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// A titled line chart with labeled axes.
#[derive(Debug, Clone)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl LineChart {
    /// Renders the chart as a complete SVG document.
    pub fn render(&self) -> String {
        let finite: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|&(x, y)| x.is_finite() && y.is_finite())
            .collect();

        let (mut x_min, mut x_max) = bounds(finite.iter().map(|&(x, _)| x));
        let (mut y_min, mut y_max) = bounds(finite.iter().map(|&(_, y)| y));
        if x_max - x_min < 1e-12 {
            x_min -= 1.0;
            x_max += 1.0;
        }
        if y_max - y_min < 1e-12 {
            y_min -= 1.0;
            y_max += 1.0;
        } else {
            let pad = 0.05 * (y_max - y_min);
            y_min -= pad;
            y_max += pad;
        }

        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
        let sy = |y: f64| MARGIN_TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        write!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
        )
        .unwrap();
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        write!(
            out,
            "<text x=\"{:.2}\" y=\"26\" font-family=\"sans-serif\" font-size=\"17\" \
             text-anchor=\"middle\">{}</text>\n",
            MARGIN_LEFT + plot_w / 2.0,
            escape(&self.title)
        )
        .unwrap();

        // Axes.
        write!(
            out,
            "<line x1=\"{l:.2}\" y1=\"{t:.2}\" x2=\"{l:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n\
             <line x1=\"{l:.2}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
            l = MARGIN_LEFT,
            r = MARGIN_LEFT + plot_w,
            t = MARGIN_TOP,
            b = MARGIN_TOP + plot_h,
        )
        .unwrap();

        for i in 0..TICKS {
            let frac = i as f64 / (TICKS - 1) as f64;
            let xv = x_min + frac * (x_max - x_min);
            let yv = y_min + frac * (y_max - y_min);
            let xp = sx(xv);
            let yp = sy(yv);
            write!(
                out,
                "<line x1=\"{xp:.2}\" y1=\"{b:.2}\" x2=\"{xp:.2}\" y2=\"{bt:.2}\" stroke=\"black\"/>\n\
                 <text x=\"{xp:.2}\" y=\"{lbl:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"middle\">{xt}</text>\n",
                b = MARGIN_TOP + plot_h,
                bt = MARGIN_TOP + plot_h + 6.0,
                lbl = MARGIN_TOP + plot_h + 22.0,
                xt = fmt_sig(xv, REPORT_DIGITS),
            )
            .unwrap();
            write!(
                out,
                "<line x1=\"{ll:.2}\" y1=\"{yp:.2}\" x2=\"{l:.2}\" y2=\"{yp:.2}\" stroke=\"black\"/>\n\
                 <text x=\"{lt:.2}\" y=\"{ytxt:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"end\">{yt}</text>\n",
                l = MARGIN_LEFT,
                ll = MARGIN_LEFT - 6.0,
                lt = MARGIN_LEFT - 10.0,
                ytxt = yp + 4.0,
                yt = fmt_sig(yv, REPORT_DIGITS),
            )
            .unwrap();
        }

        // Axis titles.
        write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" \
             text-anchor=\"middle\">{}</text>\n",
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        )
        .unwrap();
        let mid = MARGIN_TOP + plot_h / 2.0;
        write!(
            out,
            "<text x=\"20\" y=\"{mid:.2}\" font-family=\"sans-serif\" font-size=\"14\" \
             text-anchor=\"middle\" transform=\"rotate(-90 20 {mid:.2})\">{}</text>\n",
            escape(&self.y_label),
        )
        .unwrap();

        // Series polylines and legend.
        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let mut path = String::new();
            for &(x, y) in &series.points {
                if x.is_finite() && y.is_finite() {
                    write!(path, "{:.2},{:.2} ", sx(x), sy(y)).unwrap();
                }
            }
            write!(
                out,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" points=\"{}\"/>\n",
                path.trim_end()
            )
            .unwrap();

            let ly = MARGIN_TOP + 14.0 + i as f64 * 20.0;
            let lx = MARGIN_LEFT + plot_w + 14.0;
            write!(
                out,
                "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
                 stroke=\"{color}\" stroke-width=\"2\"/>\n\
                 <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                lx + 22.0,
                lx + 28.0,
                ly + 4.0,
                escape(&series.label)
            )
            .unwrap();
        }

        out.push_str("</svg>\n");
        out
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if min.is_finite() && max.is_finite() {
        (min, max)
    } else {
        (0.0, 1.0)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
