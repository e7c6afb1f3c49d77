//! Minimal hand-written SVG line charts.

use std::fmt::Write as _;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

impl Series {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Series {
            name: name.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub y_label: String,
    /// One label per x position; every series must have the same length.
    pub x_labels: Vec<String>,
    pub series: Vec<Series>,
    pub width: f64,
    pub height: f64,
}

/// Plot area geometry and the data-to-pixel mapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub n_points: usize,
}

impl Frame {
    pub fn x_px(&self, i: usize) -> f64 {
        if self.n_points <= 1 {
            return (self.left + self.right) / 2.0;
        }
        self.left + (self.right - self.left) * i as f64 / (self.n_points - 1) as f64
    }

    pub fn y_px(&self, y: f64) -> f64 {
        self.bottom - (self.bottom - self.top) * (y - self.y_min) / (self.y_max - self.y_min)
    }

    /// Inverse of [`Frame::y_px`].
    pub fn y_value(&self, px: f64) -> f64 {
        self.y_min + (self.bottom - px) * (self.y_max - self.y_min) / (self.bottom - self.top)
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// Tick label with just enough decimals for the tick spacing.
fn tick_label(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{:.*}", decimals, v);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn nice_step(span: f64, target_ticks: usize) -> f64 {
    let raw = span / target_ticks as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

impl LineChart {
    pub fn new(title: impl Into<String>, y_label: impl Into<String>, x_labels: Vec<String>) -> Self {
        LineChart {
            title: title.into(),
            y_label: y_label.into(),
            x_labels,
            series: Vec::new(),
            width: 900.0,
            height: 420.0,
        }
    }

    pub fn with_series(mut self, series: Series) -> Self {
        assert_eq!(series.values.len(), self.x_labels.len(), "series length must match x labels");
        self.series.push(series);
        self
    }

    pub fn frame(&self) -> Frame {
        let finite = self.series.iter().flat_map(|s| &s.values).filter(|v| v.is_finite());
        let (mut lo, mut hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
        if !lo.is_finite() {
            lo = -1.0;
            hi = 1.0;
        } else if hi - lo < 1e-12 {
            lo -= 1.0;
            hi += 1.0;
        } else {
            let pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
        Frame {
            left: 70.0,
            right: self.width - 150.0,
            top: 40.0,
            bottom: self.height - 60.0,
            y_min: lo,
            y_max: hi,
            n_points: self.x_labels.len(),
        }
    }

    pub fn to_svg(&self) -> String {
        let f = self.frame();
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            (f.left + f.right) / 2.0,
            escape(&self.title)
        );

        // y ticks and grid
        let step = nice_step(f.y_max - f.y_min, 6);
        let mut tick = (f.y_min / step).ceil() * step;
        let _ = writeln!(s, r#"<g class="y-ticks">"#);
        while tick <= f.y_max + step * 1e-9 {
            let y = f.y_px(tick);
            let _ = writeln!(
                s,
                r##"<line x1="{:.1}" y1="{y:.2}" x2="{:.1}" y2="{y:.2}" stroke="#e0e0e0"/><text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"##,
                f.left,
                f.right,
                f.left - 6.0,
                y + 4.0,
                tick_label(tick, step)
            );
            tick += step;
        }
        let _ = writeln!(s, "</g>");

        // x ticks: at most ~10 labels
        let n = self.x_labels.len();
        let every = n.div_ceil(10).max(1);
        let _ = writeln!(s, r#"<g class="x-ticks">"#);
        for (i, label) in self.x_labels.iter().enumerate() {
            if i % every != 0 && i + 1 != n {
                continue;
            }
            let x = f.x_px(i);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{b:.1}" x2="{x:.2}" y2="{:.1}" stroke="#000"/><text x="{x:.2}" y="{:.1}" text-anchor="end" transform="rotate(-35 {x:.2} {:.1})">{}</text>"##,
                f.bottom + 5.0,
                f.bottom + 18.0,
                f.bottom + 18.0,
                escape(label),
                b = f.bottom
            );
        }
        let _ = writeln!(s, "</g>");

        // axes
        let _ = writeln!(
            s,
            r##"<path d="M{l:.1},{t:.1} V{b:.1} H{r:.1}" fill="none" stroke="#000"/>"##,
            l = f.left,
            t = f.top,
            b = f.bottom,
            r = f.right
        );
        if f.y_min < 0.0 && f.y_max > 0.0 {
            let _ = writeln!(
                s,
                r##"<line x1="{:.1}" y1="{y:.2}" x2="{:.1}" y2="{y:.2}" stroke="#888" stroke-dasharray="4 3"/>"##,
                f.left,
                f.right,
                y = f.y_px(0.0)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
            (f.top + f.bottom) / 2.0,
            (f.top + f.bottom) / 2.0,
            escape(&self.y_label)
        );

        for (k, series) in self.series.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            let points: Vec<String> = series
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_finite())
                .map(|(i, &v)| format!("{:.3},{:.3}", f.x_px(i), f.y_px(v)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline data-series="{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                escape(&series.name),
                points.join(" ")
            );
            let ly = f.top + 10.0 + 18.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="3"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                f.right + 15.0,
                f.right + 35.0,
                f.right + 40.0,
                ly + 4.0,
                escape(&series.name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
