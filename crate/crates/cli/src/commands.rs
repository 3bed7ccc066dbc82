//! Command implementations. Each produces the full output text before
//! anything is written.

use std::process::ExitCode;

use anyhow::{bail, Result};
use robin_square::crossings::{CrossingEvent, CurvePair, Curves};
use robin_square::faberkrahn::{
    dirichlet_candidates, disc_ground_state, pleijel_exclusion, scaled_fk_bound,
};
use robin_square::nodal::{
    census_with, euler_count_check, nodal_polylines, CensusOptions, ThetaFamily,
};
use robin_square::robin1d::{AlphaSolver, RobinParam};
use robin_square::spectrum2d::{
    appendix_tables, dirichlet_rows, enumerate_spectrum_with, SpectrumRow, TableRow,
};
use robin_square::Execution;
use serde::Serialize;

use crate::args::{Cli, Command, CrossingsCommand, FkCommand, Format, Which};
use crate::output::{csv_text, json_text, num, Sink};
use crate::{figures, svg, verify};

/// Usage problems detected after parsing; reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if let Some(e) = err.downcast_ref::<clap::Error>() {
        return e.exit_code().clamp(0, 255) as u8;
    }
    match err.downcast_ref::<robin_square::Error>() {
        Some(
            robin_square::Error::InvalidParam(_)
            | robin_square::Error::Precondition { .. }
            | robin_square::Error::OutsideSquare(..)
            | robin_square::Error::OutsideInterval(_)
            | robin_square::Error::LevelOutOfRange { .. }
            | robin_square::Error::Unsupported(_),
        ) => 2,
        _ => 1,
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn pick(format: Option<Format>, default: Format, svg_ok: bool) -> Result<Format> {
    let f = format.unwrap_or(default);
    if f == Format::Svg && !svg_ok {
        return Err(usage(
            "--format svg is only available for `nodal` and `figures`",
        ));
    }
    Ok(f)
}

fn ext(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Svg => "svg",
    }
}

pub fn dispatch(cli: &Cli) -> Result<ExitCode> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Spectrum { h, lmax, count } => {
            let f = pick(cli.format, Format::Csv, false)?;
            let text = spectrum(*h, *lmax, *count, exec, f)?;
            Sink::resolve(out, "spectrum", ext(f)).emit(&text)?;
        }
        Command::Crossings { action } => {
            let f = pick(cli.format, Format::Csv, false)?;
            let text = crossings(action, exec, f)?;
            Sink::resolve(out, "crossings", ext(f)).emit(&text)?;
        }
        Command::Nodal {
            h,
            theta,
            p,
            q,
            resolution,
        } => {
            let f = pick(cli.format, Format::Json, true)?;
            let text = nodal(*h, *theta, *p, *q, *resolution as usize, exec, f)?;
            Sink::resolve(out, "nodal", ext(f)).emit(&text)?;
        }
        Command::Fk { action } => {
            let f = pick(cli.format, Format::Json, false)?;
            let text = fk(action, f)?;
            Sink::resolve(out, "fk", ext(f)).emit(&text)?;
        }
        Command::Tables { which } => {
            let f = pick(cli.format, Format::Csv, false)?;
            let text = tables(*which, f)?;
            Sink::resolve(out, "tables", ext(f)).emit(&text)?;
        }
        Command::Figures { id } => {
            figures::write_figure(*id, cli.format, out, exec)?;
        }
        Command::Verify {
            only,
            inject_alpha_tol,
        } => {
            let f = pick(cli.format, Format::Csv, false)?;
            return run_verify(only.as_deref(), *inject_alpha_tol, exec, f, out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn spectrum_rows(
    h: RobinParam,
    lmax: Option<f64>,
    count: Option<usize>,
    exec: Execution,
) -> Result<Vec<SpectrumRow>> {
    let solver = AlphaSolver::default();
    let table = match (lmax, count) {
        (Some(l), _) => enumerate_spectrum_with(&solver, exec, h, l)?,
        (None, Some(n)) => {
            // N(λ) >= πλ/4 - 2√λ - 1, so this cap holds at least n values
            let mut cap =
                (4.0 / std::f64::consts::PI * (n as f64 + 2.0 * (n as f64).sqrt() + 8.0)).max(4.0);
            loop {
                let t = enumerate_spectrum_with(&solver, exec, h, cap)?;
                if t.len() >= n {
                    break t;
                }
                cap *= 1.5;
            }
        }
        (None, None) => return Err(usage("one of --lmax or --count is required")),
    };
    let mut rows = if h.is_dirichlet() {
        dirichlet_rows(&table)
    } else {
        table.rows()
    };
    if let Some(n) = count {
        rows.truncate(n);
    }
    Ok(rows)
}

fn spectrum(
    h: RobinParam,
    lmax: Option<f64>,
    count: Option<usize>,
    exec: Execution,
    f: Format,
) -> Result<String> {
    let rows = spectrum_rows(h, lmax, count, exec)?;
    match f {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                h: RobinParam,
                rows: Vec<SpectrumRow>,
            }
            json_text(&Doc { h, rows })
        }
        _ => csv_text(
            &["m", "n", "value", "k_min", "k_max"],
            rows.iter().map(|r| {
                vec![
                    r.m.to_string(),
                    r.n.to_string(),
                    num(r.value),
                    r.k_min.to_string(),
                    r.k_max.to_string(),
                ]
            }),
        ),
    }
}

fn event_rows(events: &[CrossingEvent]) -> Result<String> {
    csv_text(
        &["a", "b", "h_star", "lambda_star", "certificate"],
        events.iter().map(|e| {
            vec![
                e.pair.a.to_string(),
                e.pair.b.to_string(),
                num(e.h_star),
                num(e.lambda_star),
                e.monotone_certificate.to_string(),
            ]
        }),
    )
}

fn crossings(action: &CrossingsCommand, exec: Execution, f: Format) -> Result<String> {
    let curves = Curves::new(AlphaSolver::default(), exec);
    match action {
        CrossingsCommand::Pair { a, b, h_lo, h_hi } => {
            let pair = CurvePair::new(*a, *b)?;
            let events: Vec<CrossingEvent> = curves
                .find_crossing(&pair, *h_lo, *h_hi)?
                .into_iter()
                .collect();
            match f {
                Format::Json => json_text(&events),
                _ => event_rows(&events),
            }
        }
        CrossingsCommand::Scan { labels, h_lo, h_hi } => {
            let events = curves.multi_crossing_scan(labels, *h_lo, *h_hi)?;
            match f {
                Format::Json => json_text(&events),
                _ => event_rows(&events),
            }
        }
        CrossingsCommand::Threshold { level, labels } => {
            #[derive(Serialize)]
            struct Row {
                label: String,
                level: f64,
                h: f64,
            }
            let rows = labels
                .iter()
                .map(|&l| {
                    Ok(Row {
                        label: l.to_string(),
                        level: *level,
                        h: curves.threshold_h(l, *level)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match f {
                Format::Json => json_text(&rows),
                _ => csv_text(
                    &["label", "level", "h"],
                    rows.iter()
                        .map(|r| vec![r.label.clone(), num(r.level), num(r.h)]),
                ),
            }
        }
        CrossingsCommand::Curves {
            labels,
            h_max,
            points,
        } => {
            if !(*h_max > 0.0 && h_max.is_finite()) || *points < 2 {
                return Err(usage(
                    "--h-max must be finite and positive and --points at least 2",
                ));
            }
            let hs: Vec<f64> = (0..*points)
                .map(|i| h_max * i as f64 / (*points - 1) as f64)
                .collect();
            let values = curves.sample_curves(labels, &hs);
            figures::curves_text(labels, &hs, &values, f)
        }
    }
}

fn nodal(
    h: RobinParam,
    theta: f64,
    p: u32,
    q: u32,
    resolution: usize,
    exec: Execution,
    f: Format,
) -> Result<String> {
    let family = ThetaFamily::new(h, theta, p, q)?;
    match f {
        Format::Json => {
            let opts = CensusOptions {
                resolution,
                exec,
                ..CensusOptions::default()
            };
            let census = census_with(&family, &opts)?;
            let euler = euler_count_check(&family, &census);
            #[derive(Serialize)]
            struct Doc<'a> {
                family: &'a ThetaFamily,
                lambda: f64,
                census: robin_square::nodal::NodalCensus,
                euler: robin_square::nodal::EulerReport,
            }
            json_text(&Doc {
                family: &family,
                lambda: family.lambda(),
                census,
                euler,
            })
        }
        Format::Csv => {
            let lines = nodal_polylines(&family, resolution.min(1024))?;
            figures::polylines_text(&[(theta, lines)])
        }
        Format::Svg => {
            let lines = nodal_polylines(&family, resolution.min(1024))?;
            let panel = figures::nodal_panel(
                format!("h = {h}, theta = {theta:.6}, ({p},{q})"),
                vec![(String::new(), svg::color(0), lines)],
            );
            Ok(svg::render(&[panel], 1, (520.0, 520.0)))
        }
    }
}

fn fk(action: &FkCommand, f: Format) -> Result<String> {
    match action {
        FkCommand::Disc { h, area } => {
            let lambda = scaled_fk_bound(*h, *area)?;
            let disc = disc_ground_state(*h);
            #[derive(Serialize)]
            struct Doc {
                h: RobinParam,
                area: f64,
                unit_disc: robin_square::faberkrahn::DiscGroundState,
                lambda1: f64,
            }
            let doc = Doc {
                h: *h,
                area: *area,
                unit_disc: disc,
                lambda1: lambda,
            };
            match f {
                Format::Json => json_text(&doc),
                _ => csv_text(
                    &["h", "area", "alpha_root", "lambda1_unit_disc", "lambda1"],
                    [vec![
                        h.to_string(),
                        num(*area),
                        num(disc.alpha_root),
                        num(disc.lambda1),
                        num(lambda),
                    ]],
                ),
            }
        }
        FkCommand::Pleijel { n, lambda } => {
            let c = pleijel_exclusion(*n, *lambda)?;
            match f {
                Format::Json => json_text(&c),
                _ => csv_text(
                    &["n", "lambda", "lhs", "f", "verdict"],
                    [vec![
                        c.n.to_string(),
                        num(c.lambda),
                        num(c.lhs),
                        num(c.f),
                        format!("{:?}", c.verdict).to_lowercase(),
                    ]],
                ),
            }
        }
        FkCommand::Candidates => {
            let c = dirichlet_candidates();
            match f {
                Format::Json => json_text(&c),
                _ => csv_text(&["n"], c.iter().map(|n| vec![n.to_string()])),
            }
        }
    }
}

fn tables(which: Which, f: Format) -> Result<String> {
    let (neu, dir) = appendix_tables();
    let chosen: Vec<(&str, &Vec<TableRow>)> = match which {
        Which::Neumann => vec![("neumann", &neu)],
        Which::Dirichlet => vec![("dirichlet", &dir)],
        Which::Both => vec![("neumann", &neu), ("dirichlet", &dir)],
    };
    match f {
        Format::Json => {
            let map: std::collections::BTreeMap<&str, &Vec<TableRow>> =
                chosen.into_iter().collect();
            json_text(&map)
        }
        _ => csv_text(
            &["table", "m", "n", "value", "k_min", "k_max"],
            chosen.iter().flat_map(|(name, rows)| {
                rows.iter().map(move |r| {
                    vec![
                        name.to_string(),
                        r.m.to_string(),
                        r.n.to_string(),
                        r.value.to_string(),
                        r.k_min.to_string(),
                        r.k_max.to_string(),
                    ]
                })
            }),
        ),
    }
}

fn run_verify(
    only: Option<&str>,
    inject: Option<f64>,
    exec: Execution,
    f: Format,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    if let Some(o) = only {
        let known = verify::groups().contains(&o)
            || verify::criteria().iter().any(|c| c.id.to_string() == o);
        if !known {
            bail!(UsageError(format!(
                "unknown criterion selector {o:?}; use a number or one of {}",
                verify::groups().join(", ")
            )));
        }
    }
    let solver = match inject {
        Some(t) if t > 0.0 && t.is_finite() => AlphaSolver::coarse(t),
        Some(t) => {
            return Err(usage(format!(
                "--inject-alpha-tol must be positive, got {t}"
            )))
        }
        None => AlphaSolver::default(),
    };
    let ctx = verify::Context { solver, exec };
    let outcomes = verify::run(&ctx, only);
    let text = match f {
        Format::Json => json_text(&outcomes)?,
        _ => csv_text(
            &["id", "group", "name", "status", "detail"],
            outcomes.iter().map(|o| {
                vec![
                    o.id.to_string(),
                    o.group.to_string(),
                    o.name.to_string(),
                    if o.passed { "PASS" } else { "FAIL" }.to_string(),
                    o.detail.clone(),
                ]
            }),
        )?,
    };
    Sink::resolve(out, "verify", ext(f)).emit(&text)?;
    let all = outcomes.iter().all(|o| o.passed);
    Ok(if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
