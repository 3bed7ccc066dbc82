//! Minimal SVG line plots. Output depends only on the data, so identical
//! inputs give byte-identical files.

use std::fmt::Write;

const PALETTE: [&str; 13] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#000080", "#b8860b", "#556b2f",
];

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub color: &'static str,
    /// Separate polylines drawn in the same style.
    pub lines: Vec<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Draw a legend in the top-left corner.
    pub legend: bool,
}

impl Panel {
    /// Range of all `y` values with a 4% margin.
    pub fn fit_y(series: &[Series]) -> (f64, f64) {
        let ys = series
            .iter()
            .flat_map(|s| s.lines.iter().flatten().map(|p| p.1));
        let (lo, hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| {
            (a.min(y), b.max(y))
        });
        if !lo.is_finite() {
            return (0.0, 1.0);
        }
        let pad = 0.04 * (hi - lo).max(1e-12);
        (lo - pad, hi + pad)
    }
}

/// Round-number tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn draw_panel(out: &mut String, p: &Panel, ox: f64, oy: f64, w: f64, h: f64) {
    let (ml, mr, mt, mb) = (58.0, 12.0, 26.0, 42.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let (x0, x1) = p.x_range;
    let (y0, y1) = p.y_range;
    let sx = |x: f64| ox + ml + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| oy + mt + (y1 - y) / (y1 - y0) * ph;
    let _ = writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#,
        ox + ml,
        oy + mt
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
        ox + ml + pw / 2.0,
        oy + 17.0,
        escape(&p.title)
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let yb = oy + mt + ph;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{yb:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="10">{}</text>"#,
            yb + 4.0,
            yb + 15.0,
            fmt_tick(t)
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let xl = ox + ml;
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{xl:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end" font-size="10">{}</text>"#,
            xl - 4.0,
            xl - 6.0,
            y + 3.5,
            fmt_tick(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{}</text>"#,
        ox + ml + pw / 2.0,
        oy + h - 8.0,
        escape(&p.x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
        ox + 14.0,
        oy + mt + ph / 2.0,
        ox + 14.0,
        oy + mt + ph / 2.0,
        escape(&p.y_label)
    );
    let clip = format!("c{}_{}", ox as i64, oy as i64);
    let _ = writeln!(
        out,
        r#"<clipPath id="{clip}"><rect x="{:.2}" y="{:.2}" width="{pw:.2}" height="{ph:.2}"/></clipPath><g clip-path="url(#{clip})" fill="none" stroke-width="1.3">"#,
        ox + ml,
        oy + mt
    );
    for s in &p.series {
        for line in &s.lines {
            if line.len() < 2 {
                continue;
            }
            let pts: Vec<String> = line
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline stroke="{}" points="{}"/>"#,
                s.color,
                pts.join(" ")
            );
        }
    }
    out.push_str("</g>\n");
    if p.legend {
        for (i, s) in p.series.iter().enumerate() {
            let y = oy + mt + 14.0 + 13.0 * i as f64;
            let x = ox + ml + 8.0;
            let _ = writeln!(
                out,
                r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2"/><text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
                x + 16.0,
                s.color,
                x + 20.0,
                y + 3.5,
                escape(&s.name)
            );
        }
    }
}

/// Lays `panels` out on a grid with `columns` columns.
pub fn render(panels: &[Panel], columns: usize, panel_size: (f64, f64)) -> String {
    let columns = columns.max(1);
    let rows = panels.len().div_ceil(columns);
    let (w, h) = panel_size;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}" font-family="sans-serif">"#,
        w * columns as f64,
        h * rows as f64,
        w * columns as f64,
        h * rows as f64
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, p) in panels.iter().enumerate() {
        let (r, c) = (i / columns, i % columns);
        draw_panel(&mut out, p, c as f64 * w, r as f64 * h, w, h);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round() {
        assert_eq!(ticks(0.0, 100.0), vec![0.0, 20.0, 40.0, 60.0, 80.0, 100.0]);
        assert_eq!(fmt_tick(-0.0), "0");
        assert_eq!(fmt_tick(2.5), "2.5");
    }

    #[test]
    fn render_is_deterministic() {
        let p = Panel {
            title: "t <1>".into(),
            x_range: (0.0, 1.0),
            y_range: (0.0, 1.0),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                name: "s".into(),
                color: color(0),
                lines: vec![vec![(0.0, 0.0), (1.0, 1.0)]],
            }],
            legend: true,
        };
        let a = render(std::slice::from_ref(&p), 1, (300.0, 200.0));
        assert_eq!(a, render(&[p], 1, (300.0, 200.0)));
        assert!(a.contains("t &lt;1&gt;") && a.contains("<polyline"));
    }
}
