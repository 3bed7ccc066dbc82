//! Data and plots for the six figures. Each figure writes `figN.csv` and
//! `figN.svg` into the output directory.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::path::Path;

use anyhow::{bail, Result};
use robin_square::crossings::Curves;
use robin_square::nodal::{g_function, nodal_polylines, ThetaFamily};
use robin_square::robin1d::{AlphaSolver, RobinParam};
use robin_square::spectrum2d::ModeLabel;
use robin_square::Execution;

use crate::args::Format;
use crate::output::{csv_text, num, out_dir, write_atomic};
use crate::svg::{self, Panel, Series};

/// Labels of the curves in figure 2.
pub const FIG2_LABELS: [(u32, u32); 11] = [
    (0, 0),
    (1, 0),
    (1, 1),
    (2, 0),
    (2, 1),
    (2, 2),
    (3, 0),
    (3, 1),
    (3, 2),
    (4, 0),
    (4, 1),
];

/// Labels of the curves in figure 3.
pub const FIG3_LABELS: [(u32, u32); 13] = [
    (4, 0),
    (4, 1),
    (3, 3),
    (4, 2),
    (5, 0),
    (5, 1),
    (4, 3),
    (5, 2),
    (4, 4),
    (5, 3),
    (6, 0),
    (6, 1),
    (6, 2),
];

/// Angles of the Dirichlet `(0,2)` nodal sets in figure 4.
pub fn fig4_thetas() -> [f64; 10] {
    let a = (1.0f64 / 3.0).atan();
    [
        0.0,
        a,
        PI / 8.0,
        FRAC_PI_4,
        3.0 * PI / 8.0,
        FRAC_PI_2 - a,
        FRAC_PI_2,
        5.0 * PI / 8.0,
        3.0 * FRAC_PI_4,
        7.0 * PI / 8.0,
    ]
}

/// Polylines of one nodal set.
pub type NodalSet = Vec<Vec<(f64, f64)>>;

/// Nodal-set polylines as `theta,line,x,y` rows.
pub fn polylines_text(sets: &[(f64, NodalSet)]) -> Result<String> {
    let rows = sets.iter().flat_map(|(theta, lines)| {
        lines.iter().enumerate().flat_map(move |(i, line)| {
            line.iter()
                .map(move |&(x, y)| vec![num(*theta), i.to_string(), num(x), num(y)])
        })
    });
    csv_text(&["theta", "line", "x", "y"], rows)
}

/// Sampled curves as one `h` column plus one column per label.
pub fn curves_text(
    labels: &[ModeLabel],
    hs: &[f64],
    values: &[Vec<f64>],
    f: Format,
) -> Result<String> {
    let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    if f == Format::Json {
        let doc = serde_json::json!({
            "h": hs,
            "curves": names.iter().enumerate().map(|(j, n)| {
                serde_json::json!({ "label": n, "lambda": values.iter().map(|r| r[j]).collect::<Vec<_>>() })
            }).collect::<Vec<_>>(),
        });
        return crate::output::json_text(&doc);
    }
    let mut header = vec!["h"];
    header.extend(names.iter().map(String::as_str));
    csv_text(
        &header,
        hs.iter().zip(values).map(|(h, row)| {
            std::iter::once(num(*h))
                .chain(row.iter().map(|v| num(*v)))
                .collect()
        }),
    )
}

pub fn nodal_panel(title: String, series: Vec<(String, &'static str, NodalSet)>) -> Panel {
    let legend = series.len() > 1;
    Panel {
        title,
        x_range: (-FRAC_PI_2, FRAC_PI_2),
        y_range: (-FRAC_PI_2, FRAC_PI_2),
        x_label: "x".into(),
        y_label: "y".into(),
        series: series
            .into_iter()
            .map(|(name, color, lines)| Series { name, color, lines })
            .collect(),
        legend,
    }
}

fn curve_panel(
    title: &str,
    labels: &[ModeLabel],
    h_max: f64,
    points: usize,
    exec: Execution,
) -> (String, Panel) {
    let curves = Curves::new(AlphaSolver::default(), exec);
    let hs: Vec<f64> = (0..points)
        .map(|i| h_max * i as f64 / (points - 1) as f64)
        .collect();
    let values = curves.sample_curves(labels, &hs);
    let series: Vec<Series> = labels
        .iter()
        .enumerate()
        .map(|(j, l)| Series {
            name: l.to_string(),
            color: svg::color(j),
            lines: vec![hs.iter().zip(&values).map(|(&h, r)| (h, r[j])).collect()],
        })
        .collect();
    let panel = Panel {
        title: title.into(),
        x_range: (0.0, h_max),
        y_range: Panel::fit_y(&series),
        x_label: "h".into(),
        y_label: "lambda".into(),
        series,
        legend: true,
    };
    let text = curves_text(labels, &hs, &values, Format::Csv).expect("in-memory csv");
    (text, panel)
}

fn labels(pairs: &[(u32, u32)]) -> Vec<ModeLabel> {
    pairs.iter().map(|&(p, q)| ModeLabel::new(p, q)).collect()
}

/// CSV data and SVG text of figure `id`.
pub fn figure(id: u8, exec: Execution) -> Result<(String, String)> {
    match id {
        1 => {
            let solver = AlphaSolver::default();
            let hs: Vec<f64> = (0..=1000).map(|i| 0.1 * i as f64).collect();
            let rows: Vec<[f64; 3]> = exec.map(&hs, |&h| {
                let hp = RobinParam::new(h).expect("non-negative");
                [0, 1, 2].map(|p| solver.solve(p, hp).alpha)
            });
            let csv = csv_text(
                &["h", "alpha0", "alpha1", "alpha2"],
                hs.iter()
                    .zip(&rows)
                    .map(|(h, r)| vec![num(*h), num(r[0]), num(r[1]), num(r[2])]),
            )?;
            let series: Vec<Series> = (0..3)
                .map(|p| Series {
                    name: format!("alpha_{p}"),
                    color: svg::color(p),
                    lines: vec![hs.iter().zip(&rows).map(|(&h, r)| (h, r[p])).collect()],
                })
                .collect();
            let panel = Panel {
                title: "Branches alpha_0, alpha_1, alpha_2".into(),
                x_range: (0.0, 100.0),
                y_range: (0.0, 3.0 * PI),
                x_label: "h".into(),
                y_label: "alpha".into(),
                series,
                legend: true,
            };
            Ok((csv, svg::render(&[panel], 1, (640.0, 420.0))))
        }
        2 => {
            let (csv, panel) = curve_panel(
                "Eigenvalue curves, h <= 12",
                &labels(&FIG2_LABELS),
                12.0,
                241,
                exec,
            );
            Ok((csv, svg::render(&[panel], 1, (720.0, 520.0))))
        }
        3 => {
            let (csv, panel) = curve_panel(
                "Eigenvalue curves, h <= 16",
                &labels(&FIG3_LABELS),
                16.0,
                321,
                exec,
            );
            Ok((csv, svg::render(&[panel], 1, (720.0, 520.0))))
        }
        4 => nodal_grid(RobinParam::DIRICHLET, &fig4_thetas(), 0, 2, exec),
        5 => {
            let h = RobinParam::Finite(20.0);
            nodal_grid(h, &crate::verify::table_angles(h)?, 5, 1, exec)
        }
        6 => {
            let hs: Vec<f64> = (0..=480).map(|i| 20.0 + i as f64).collect();
            let gs = exec.map(&hs, |&h| g_function(RobinParam::Finite(h)));
            let gs = gs.into_iter().collect::<robin_square::Result<Vec<f64>>>()?;
            let csv = csv_text(
                &["h", "g"],
                hs.iter().zip(&gs).map(|(h, g)| vec![num(*h), num(*g)]),
            )?;
            let series = vec![Series {
                name: "g".into(),
                color: svg::color(0),
                lines: vec![hs.iter().copied().zip(gs.iter().copied()).collect()],
            }];
            let panel = Panel {
                title: "g(h) on [20, 500]".into(),
                x_range: (20.0, 500.0),
                y_range: Panel::fit_y(&series),
                x_label: "h".into(),
                y_label: "g".into(),
                series,
                legend: false,
            };
            Ok((csv, svg::render(&[panel], 1, (640.0, 420.0))))
        }
        _ => bail!(crate::commands::UsageError(format!(
            "figure id must be 1..=6, got {id}"
        ))),
    }
}

fn nodal_grid(
    h: RobinParam,
    thetas: &[f64],
    p: u32,
    q: u32,
    exec: Execution,
) -> Result<(String, String)> {
    let sets = exec
        .map(thetas, |&t| {
            let fam = ThetaFamily::new(h, t, p, q)?;
            Ok((t, nodal_polylines(&fam, 400)?))
        })
        .into_iter()
        .collect::<robin_square::Result<Vec<_>>>()?;
    let csv = polylines_text(&sets)?;
    let panels: Vec<Panel> = sets
        .iter()
        .map(|(t, lines)| {
            nodal_panel(
                format!("theta = {:.4}", t),
                vec![(String::new(), svg::color(0), lines.clone())],
            )
        })
        .collect();
    Ok((csv, svg::render(&panels, 4, (260.0, 260.0))))
}

/// Writes `figN.csv` and `figN.svg`; `--format` restricts to one of them.
pub fn write_figure(
    id: u8,
    format: Option<Format>,
    out: Option<&Path>,
    exec: Execution,
) -> Result<()> {
    if format == Some(Format::Json) {
        bail!(crate::commands::UsageError(
            "figures are written as csv and svg".into()
        ));
    }
    let (csv, svg_text) = figure(id, exec)?;
    let dir = out_dir(out);
    if format != Some(Format::Svg) {
        write_atomic(&dir.join(format!("fig{id}.csv")), &csv)?;
    }
    if format != Some(Format::Csv) {
        write_atomic(&dir.join(format!("fig{id}.svg")), &svg_text)?;
    }
    Ok(())
}
