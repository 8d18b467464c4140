//! Deterministic SVG scatter plots of `rho(n)`, `M(n)` and `m(n)`.

use std::fmt::Write;

use crate::factorizations::LengthTables;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Rho,
    MaxLen,
    MinLen,
}

impl PlotKind {
    fn label(self) -> &'static str {
        match self {
            PlotKind::Rho => "rho(n)",
            PlotKind::MaxLen => "M(n)",
            PlotKind::MinLen => "m(n)",
        }
    }
}

/// Scatter plot of the chosen function over the monoid elements in `[0, to]`.
pub fn render(tables: &LengthTables, kind: PlotKind, to: u64) -> String {
    let points: Vec<(u64, f64)> = tables
        .stats_range(0, to)
        .into_iter()
        .map(|st| {
            let y = match kind {
                PlotKind::Rho => st.elasticity.to_f64(),
                PlotKind::MaxLen => st.max_len as f64,
                PlotKind::MinLen => st.min_len as f64,
            };
            (st.n, y)
        })
        .collect();
    let title = format!("{} for {}", kind.label(), tables.monoid());
    scatter(&points, to, &title, kind.label())
}

fn scatter(points: &[(u64, f64)], x_max: u64, title: &str, y_label: &str) -> String {
    let (mut y_lo, mut y_hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| {
            (lo.min(y), hi.max(y))
        });
    if !y_lo.is_finite() {
        (y_lo, y_hi) = (0.0, 1.0);
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    let x_span = x_max.max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let px = |x: u64| MARGIN + x as f64 / x_span * plot_w;
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="400" y="25" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        escape(title)
    );
    let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{MARGIN:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">n = {x_max}</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 20.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{} in [{y_lo:.4}, {y_hi:.4}]</text>"#,
        MARGIN,
        MARGIN - 10.0,
        escape(y_label)
    );
    let _ = writeln!(svg, r#"<g fill="steelblue">"#);
    for &(x, y) in points {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2"/>"#,
            px(x),
            py(y)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
