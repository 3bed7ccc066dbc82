//! Acceptance checks for the whole library, shared by `robin-square verify`
//! and the `acceptance` integration test.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use robin_square::crossings::{CurvePair, Curves};
use robin_square::faberkrahn::{
    dirichlet_candidates, disc_ground_state, j0_first_zero, pleijel_constant, pleijel_f,
};
use robin_square::nodal::{
    boundary_zero_count, census_sweep_5, census_with, critical_angles_25, critical_angles_5,
    g_function, solve_xc, sweep_thetas_5, wronskian_min, CensusOptions, Side, ThetaFamily,
};
use robin_square::robin1d::{AlphaSolver, RobinParam};
use robin_square::spectrum2d::{
    appendix_tables, enumerate_spectrum, enumerate_spectrum_with, sturm_index_bounds,
    theorem_1_1_bound, weyl_bounds_check, ModeLabel, TableRow,
};
use robin_square::Execution;
use serde::Serialize;

const NEUMANN_CSV: &str = include_str!("../../core/tests/data/neumann.csv");
const DIRICHLET_CSV: &str = include_str!("../../core/tests/data/dirichlet.csv");

/// Settings shared by every check.
#[derive(Debug, Clone, Copy, Default)]
pub struct Context {
    pub solver: AlphaSolver,
    pub exec: Execution,
}

impl Context {
    fn curves(&self) -> Curves {
        Curves::new(self.solver, self.exec)
    }

    fn census(&self) -> CensusOptions {
        CensusOptions {
            exec: self.exec,
            ..CensusOptions::default()
        }
    }
}

/// `Ok` carries a short summary, `Err` the first discrepancy found.
type Check = Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub group: &'static str,
    pub name: &'static str,
    run: fn(&Context) -> Check,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub group: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub fn criteria() -> Vec<Criterion> {
    macro_rules! c {
        ($id:expr, $group:expr, $name:expr, $run:expr) => {
            Criterion {
                id: $id,
                group: $group,
                name: $name,
                run: $run,
            }
        };
    }
    vec![
        c!(1, "robin1d", "branch limits and residuals", branch_limits),
        c!(2, "crossings", "crossing of (2,2) and (3,0)", nine_crossing),
        c!(
            3,
            "crossings",
            "crossing of (4,3) and (5,1)",
            twenty_five_crossing
        ),
        c!(4, "crossings", "threshold constants", thresholds),
        c!(5, "crossings", "multi-crossing scan", multi_scan),
        c!(6, "nodal", "(5,1) critical geometry at h = 20", geometry_25),
        c!(7, "nodal", "large-h asymptotics", asymptotics_25),
        c!(8, "nodal", "(0,2) census pattern", sweep_5),
        c!(9, "nodal", "(5,1) census at h = 20", table_25),
        c!(10, "nodal", "u_{2,2} census and labelling", two_two),
        c!(11, "spectrum", "integer tables", tables),
        c!(
            12,
            "spectrum",
            "Weyl sandwich and Pleijel cutoff",
            weyl_pleijel
        ),
        c!(13, "nodal", "Sturm bounds on boundary zeros", sturm),
        c!(14, "faberkrahn", "disc asymptotics", disc),
        c!(15, "faberkrahn", "Dirichlet candidates", candidates),
        c!(16, "properties", "property suite", properties),
    ]
}

/// Runs every criterion whose group or number matches `only`.
pub fn run(ctx: &Context, only: Option<&str>) -> Vec<Outcome> {
    criteria()
        .into_iter()
        .filter(|c| only.is_none_or(|o| o == c.group || o == c.id.to_string()))
        .map(|c| {
            let (passed, detail) = match (c.run)(ctx) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome {
                id: c.id,
                group: c.group,
                name: c.name,
                passed,
                detail,
            }
        })
        .collect()
}

pub fn groups() -> Vec<&'static str> {
    let mut g: Vec<&'static str> = criteria().iter().map(|c| c.group).collect();
    g.dedup();
    g.sort_unstable();
    g.dedup();
    g
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{name}: got {got:.9}, want {want} ± {tol:e}")
    })
}

fn label(p: u32, q: u32) -> ModeLabel {
    ModeLabel::new(p, q)
}

fn pair(a: (u32, u32), b: (u32, u32)) -> CurvePair {
    CurvePair::new(label(a.0, a.1), label(b.0, b.1)).expect("distinct labels")
}

fn fin(h: f64) -> RobinParam {
    RobinParam::Finite(h)
}

fn branch_limits(ctx: &Context) -> Check {
    let mut worst: f64 = 0.0;
    for p in 0..=8u32 {
        let n = ctx.solver.solve(p, RobinParam::NEUMANN).alpha;
        close(&format!("alpha_{p}(0)"), n, p as f64 * PI, 0.0)?;
        let big = ctx.solver.solve(p, fin(1e6)).alpha;
        close(&format!("alpha_{p}(1e6)"), big, (p + 1) as f64 * PI, 1e-4)?;
        for k in 0..=90 {
            let h = 10f64.powf(-3.0 + 0.1 * k as f64);
            let r = ctx.solver.solve(p, fin(h)).residual();
            worst = worst.max(r);
            ensure(r <= 1e-12, || {
                format!("residual {r:e} for p = {p}, h = {h:e}")
            })?;
        }
    }
    Ok(format!("p <= 8, worst residual {worst:.1e}"))
}

fn nine_crossing(ctx: &Context) -> Check {
    let curves = ctx.curves();
    let pr = pair((2, 2), (3, 0));
    let e = curves
        .find_crossing(&pr, 1e-3, 1e3)
        .map_err(|e| e.to_string())?
        .ok_or("no crossing found")?;
    close("h*", e.h_star, 1.6970, 2e-3)?;
    close("lambda*", e.lambda_star, 11.4498, 2e-3)?;
    let changes = curves.sign_changes(&pr, 1e-3, 1e3, 512);
    ensure(changes == 1, || {
        format!("{changes} sign changes of sigma on [1e-3, 1e3]")
    })?;
    ensure(e.monotone_certificate != 0, || {
        "sigma' changes sign near h*".into()
    })?;
    Ok(format!(
        "h* = {:.6}, lambda* = {:.6}",
        e.h_star, e.lambda_star
    ))
}

fn twenty_five_crossing(ctx: &Context) -> Check {
    let e = ctx
        .curves()
        .find_crossing(&pair((4, 3), (5, 1)), 1e-3, 1e3)
        .map_err(|e| e.to_string())?
        .ok_or("no crossing found")?;
    close("h*", e.h_star, 3.1317, 1e-3)?;
    Ok(format!("h* = {:.6}", e.h_star))
}

/// `(p, q, level, h)` for every threshold.
pub const THRESHOLDS: [(u32, u32, f64, f64); 22] = [
    (3, 1, 18.0, 11.4225),
    (3, 2, 18.0, 2.6288),
    (4, 0, 18.0, 1.2668),
    (4, 1, 18.0, 0.4208),
    (2, 2, 13.0, 2.9804),
    (3, 0, 13.0, 3.5468),
    (5, 2, 41.0, 12.6664),
    (4, 4, 41.0, 4.9398),
    (5, 3, 41.0, 3.4557),
    (6, 0, 41.0, 3.8230),
    (6, 1, 41.0, 2.0624),
    (6, 2, 41.0, 0.4016),
    (4, 3, 37.0, 11.5497),
    (5, 1, 37.0, 15.3826),
    (9, 5, 130.0, 26.9531),
    (8, 7, 130.0, 9.3456),
    (11, 0, 130.0, 7.3264),
    (9, 4, 117.0, 17.5353),
    (7, 7, 117.0, 12.4168),
    (10, 0, 117.0, 28.8245),
    (8, 6, 117.0, 9.9784),
    (10, 1, 117.0, 16.9735),
];

fn thresholds(ctx: &Context) -> Check {
    let curves = ctx.curves();
    let mut worst: f64 = 0.0;
    for &(p, q, level, want) in &THRESHOLDS {
        let h = curves
            .threshold_h(label(p, q), level)
            .map_err(|e| e.to_string())?;
        worst = worst.max((h - want).abs());
        close(&format!("threshold ({p},{q}) at {level}"), h, want, 1e-3)?;
    }
    Ok(format!(
        "{} constants, worst error {worst:.1e}",
        THRESHOLDS.len()
    ))
}

fn multi_scan(ctx: &Context) -> Check {
    let labels = [
        label(9, 4),
        label(7, 7),
        label(10, 0),
        label(8, 6),
        label(10, 1),
    ];
    let events = ctx
        .curves()
        .multi_crossing_scan(&labels, 1e-3, 1e3)
        .map_err(|e| e.to_string())?;
    let want = [2.1209, 2.1864, 3.7786, 5.2167];
    ensure(events.len() == want.len(), || {
        format!("{} events, want {}", events.len(), want.len())
    })?;
    for (e, &w) in events.iter().zip(&want) {
        close(&format!("crossing {}", e.pair), e.h_star, w, 1e-3)?;
    }
    let hs: Vec<String> = events.iter().map(|e| format!("{:.4}", e.h_star)).collect();
    Ok(format!("events at {}", hs.join(", ")))
}

fn geometry_25(_: &Context) -> Check {
    let a = critical_angles_25(fin(20.0)).map_err(|e| e.to_string())?;
    close("x_c", a.x_c, 0.8096522, 1e-6)?;
    close("theta_m", a.theta_m, 0.3324691, 1e-6)?;
    close("theta_t", a.theta_t, 1.2492655, 1e-6)?;
    Ok(format!(
        "x_c = {:.8}, theta_m = {:.8}, theta_t = {:.8}",
        a.x_c, a.theta_m, a.theta_t
    ))
}

fn asymptotics_25(_: &Context) -> Check {
    let h = 500.0;
    let a = critical_angles_25(fin(h)).map_err(|e| e.to_string())?;
    let dt = a.delta_theta * h * h;
    ensure((4.56..=5.04).contains(&dt), || {
        format!("delta_theta h^2 = {dt}")
    })?;
    let g = (g_function(fin(h)).map_err(|e| e.to_string())? - 1.0) * h * h;
    ensure((15.2..=16.8).contains(&g), || format!("(g - 1) h^2 = {g}"))?;
    let r: Vec<f64> = [100.0, 300.0, 1000.0]
        .iter()
        .map(|&h| solve_xc(fin(h)).map(|x| (x - FRAC_PI_4 - 0.5 / h) * h * h))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(
        r.iter().all(|v| v.abs() < 1.0) && r[2].abs() <= r[1].abs() && r[1].abs() <= r[0].abs(),
        || format!("(x_c - pi/4 - 1/2h) h^2 = {r:?} does not settle"),
    )?;
    Ok(format!(
        "delta_theta h^2 = {dt:.3}, (g - 1) h^2 = {g:.3}, x_c remainder h^2 = {:.4}",
        r[2]
    ))
}

fn sweep_5(ctx: &Context) -> Check {
    for h in [fin(20.0), fin(100.0), RobinParam::DIRICHLET] {
        let counts: Vec<usize> = census_sweep_5(h, &sweep_thetas_5(h), &ctx.census())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        ensure(counts == [3, 2, 3, 4, 3], || format!("h = {h}: {counts:?}"))?;
    }
    Ok("(3,2,3,4,3) at h = 20, 100, inf".into())
}

/// The twelve angles of the `(5, 1)` table at `h`.
pub fn table_angles(h: RobinParam) -> robin_square::Result<[f64; 12]> {
    let a = critical_angles_25(h)?;
    let (tm, tt) = (a.theta_m, a.theta_t);
    Ok([
        0.0,
        FRAC_PI_2 - tt,
        0.5 * (FRAC_PI_2 - tt + tm),
        tm,
        FRAC_PI_4,
        FRAC_PI_2 - tm,
        0.5 * (FRAC_PI_2 - tm + tt),
        tt,
        FRAC_PI_2,
        5.0 * PI / 8.0,
        3.0 * FRAC_PI_4,
        13.0 * PI / 16.0,
    ])
}

const TABLE_25: [(usize, usize, usize); 12] = [
    (12, 12, 5),
    (12, 12, 3),
    (8, 12, 1),
    (8, 8, 1),
    (8, 4, 1),
    (8, 8, 1),
    (8, 12, 1),
    (12, 12, 3),
    (12, 12, 5),
    (12, 12, 5),
    (16, 16, 5),
    (12, 12, 5),
];

fn table_25(ctx: &Context) -> Check {
    let h = fin(20.0);
    let thetas = table_angles(h).map_err(|e| e.to_string())?;
    for (&theta, &want) in thetas.iter().zip(&TABLE_25) {
        let f = ThetaFamily::new(h, theta, 5, 1).map_err(|e| e.to_string())?;
        let c = census_with(&f, &ctx.census()).map_err(|e| e.to_string())?;
        let got = (c.domains, c.boundary_zeros, c.interior_critical);
        ensure(got == want, || {
            format!("theta = {theta:.6}: got {got:?}, want {want:?}")
        })?;
    }
    Ok("all twelve (domains, boundary, interior) triples".into())
}

fn two_two(ctx: &Context) -> Check {
    for h in [0.5, 1.5] {
        let f = ThetaFamily::single(fin(h), 2, 2).map_err(|e| e.to_string())?;
        let d = census_with(&f, &ctx.census())
            .map_err(|e| e.to_string())?
            .domains;
        ensure(d == 9, || format!("h = {h}: {d} domains"))?;
    }
    let h9 = ctx
        .curves()
        .find_crossing(&pair((2, 2), (3, 0)), 1e-3, 1e3)
        .map_err(|e| e.to_string())?
        .ok_or("no crossing")?
        .h_star;
    for (h, want) in [
        (0.5, 9),
        (1.5, 9),
        (h9 - 0.01, 9),
        (h9 + 0.01, 11),
        (3.0, 11),
    ] {
        let t = enumerate_spectrum_with(&ctx.solver, ctx.exec, fin(h), 14.0)
            .map_err(|e| e.to_string())?;
        let i = t.position(label(2, 2)).ok_or("(2,2) missing")?;
        let (lo, hi) = t.k_range(i);
        ensure(lo == want && hi == want, || {
            format!("h = {h}: (2,2) has k = {lo}..{hi}, want {want}")
        })?;
    }
    Ok(format!("9 domains; k = 9 below h* = {h9:.6} and 11 above"))
}

fn parse_rows(csv: &str) -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<u64> = l
                .split(',')
                .map(|v| v.trim().parse().expect("integer field"))
                .collect();
            TableRow {
                m: f[0] as u32,
                n: f[1] as u32,
                value: f[2],
                k_min: f[3] as usize,
                k_max: f[4] as usize,
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.value, r.m, r.n));
    rows
}

fn sorted(mut rows: Vec<TableRow>) -> Vec<TableRow> {
    rows.sort_by_key(|r| (r.value, r.m, r.n));
    rows
}

fn tables(ctx: &Context) -> Check {
    let (neu, dir) = appendix_tables();
    for (name, got, want) in [
        ("Neumann", sorted(neu.clone()), parse_rows(NEUMANN_CSV)),
        ("Dirichlet", sorted(dir.clone()), parse_rows(DIRICHLET_CSV)),
    ] {
        ensure(got.len() == want.len(), || {
            format!("{name}: {} rows, want {}", got.len(), want.len())
        })?;
        if let Some((g, w)) = got.iter().zip(&want).find(|(g, w)| g != w) {
            return Err(format!("{name}: row {g:?}, want {w:?}"));
        }
    }
    // the floating-point spectrum reproduces the same ranges
    for (h, rows, shift) in [
        (RobinParam::NEUMANN, &neu, 0),
        (RobinParam::DIRICHLET, &dir, 1),
    ] {
        let cap = rows.iter().map(|r| r.value).max().unwrap_or(0) as f64 + 0.5;
        let t =
            enumerate_spectrum_with(&ctx.solver, ctx.exec, h, cap).map_err(|e| e.to_string())?;
        for r in rows.iter() {
            let i = t
                .position(label(r.m - shift, r.n - shift))
                .ok_or_else(|| format!("({},{}) missing at h = {h}", r.m, r.n))?;
            let (lo, hi) = t.k_range(i);
            ensure(
                lo == r.k_min && hi == r.k_max && t.entries[i].value == r.value as f64,
                || {
                    format!(
                        "h = {h}: ({},{}) gives k = {lo}..{hi}, want {:?}",
                        r.m, r.n, r
                    )
                },
            )?;
        }
    }
    Ok(format!(
        "{} Neumann and {} Dirichlet rows",
        neu.len(),
        dir.len()
    ))
}

fn weyl_pleijel(_: &Context) -> Check {
    let w = weyl_bounds_check(600.0, 10_000).map_err(|e| e.to_string())?;
    ensure(w.holds(), || {
        format!(
            "violations: Neumann {:?}, Dirichlet {:?}",
            w.neumann_violations.first(),
            w.dirichlet_violations.first()
        )
    })?;
    let (a, b) = (pleijel_f(597.0), pleijel_f(598.0));
    ensure(a < 0.0 && b > 0.0, || format!("f(597) = {a}, f(598) = {b}"))?;
    let cut = theorem_1_1_bound();
    ensure(cut.cutoff == 520 && cut.bound < 518.67, || {
        format!("{cut:?}")
    })?;
    Ok(format!(
        "{} sample points, f(597) = {a:.2e}, f(598) = {b:.2e}, cutoff {}",
        w.samples, cut.cutoff
    ))
}

fn sturm(_: &Context) -> Check {
    let mut checked = 0;
    for h in [20.0, 100.0] {
        let hp = fin(h);
        let mut families: Vec<(f64, u32, u32)> =
            sweep_thetas_5(hp).iter().map(|&t| (t, 0, 2)).collect();
        families.push((critical_angles_5(hp).theta1, 0, 2));
        let angles = table_angles(hp).map_err(|e| e.to_string())?;
        families.extend(angles.iter().map(|&t| (t, 5, 1)));
        let table = enumerate_spectrum(hp, 45.0).map_err(|e| e.to_string())?;
        for (theta, p, q) in families {
            let f = ThetaFamily::new(hp, theta, p, q).map_err(|e| e.to_string())?;
            let lam = f.lambda();
            let entry = table.entries[table.position(label(p, q)).ok_or("label missing")?];
            let j = sturm_index_bounds(&entry, &table)
                .map_err(|e| e.to_string())?
                .j as usize;
            let mut total = 0;
            for side in Side::ALL {
                let n = boundary_zero_count(&f, side)
                    .map_err(|e| e.to_string())?
                    .count();
                ensure(n <= j, || {
                    format!("h = {h}, ({p},{q}) theta = {theta:.5}, {side:?}: {n} > j_n = {j}")
                })?;
                total += n;
            }
            let bound = 4.0 * lam.sqrt();
            ensure(total as f64 <= bound, || {
                format!("h = {h}, ({p},{q}) theta = {theta:.5}: {total} > {bound}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} families"))
}

fn disc(_: &Context) -> Check {
    let j = j0_first_zero();
    let h = 1e-4;
    let slope = disc_ground_state(fin(h)).lambda1 / h;
    let want = 4.0 * PI.sqrt();
    let slope_ok = (slope / want - 1.0).abs() <= 0.01;
    let h = 1e4;
    let defect = (PI * j * j - disc_ground_state(fin(h)).lambda1) * h;
    let c = 2.0 * PI.powf(1.5) * j * j;
    let defect_ok = (defect / c - 1.0).abs() <= 0.01;
    let pc = pleijel_constant();
    let pc_ok = (pc - 0.543229).abs() <= 1e-6;
    let summary = format!(
        "lambda1(1e-4)/1e-4 = {slope:.6} (want 4 sqrt(pi) = {want:.6}), defect = {defect:.4} (want {c:.4}), pi/j^2 = {pc:.7}"
    );
    if slope_ok && defect_ok && pc_ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn candidates(_: &Context) -> Check {
    let c = dirichlet_candidates();
    ensure(c == [1, 2, 4, 5, 7, 9], || format!("{c:?}"))?;
    Ok(format!("{c:?}"))
}

/// Deterministic points of `[0, 1)` from the golden-ratio sequence.
fn unit_samples(n: usize, seed: f64) -> impl Iterator<Item = f64> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    (0..n).map(move |i| (seed + g * i as f64).fract())
}

fn properties(ctx: &Context) -> Check {
    let opts = CensusOptions {
        resolution: 256,
        ..ctx.census()
    };
    let mut censuses = 0;
    // parity and resolution stability
    for (k, (t, s)) in unit_samples(12, 0.3).zip(unit_samples(12, 0.7)).enumerate() {
        let (p, q) = [(1, 0), (2, 1), (3, 0), (5, 2), (4, 1), (3, 2)][k % 6];
        let h = fin(1.0 + 49.0 * s);
        let theta = PI * t;
        let f = ThetaFamily::new(h, theta, p, q).map_err(|e| e.to_string())?;
        let c = census_with(&f, &opts).map_err(|e| format!("({p},{q}) theta = {theta}: {e}"))?;
        ensure(c.domains % 2 == 0, || {
            format!(
                "({p},{q}) at h = {h}, theta = {theta}: {} domains",
                c.domains
            )
        })?;
        let n = c.history.len();
        ensure(n >= 2 && c.history[n - 1].1 == c.history[n - 2].1, || {
            format!("history {:?}", c.history)
        })?;
        censuses += 1;
    }
    // branch derivative against central differences
    for t in unit_samples(20, 0.1) {
        let h = 10f64.powf(-2.0 + 4.0 * t);
        for p in 0..4 {
            let d =
                robin_square::robin1d::alpha_derivative(p, fin(h)).map_err(|e| e.to_string())?;
            let e = 1e-6 * h;
            let fd = (ctx.solver.solve(p, fin(h + e)).alpha
                - ctx.solver.solve(p, fin(h - e)).alpha)
                / (2.0 * e);
            ensure((d - fd).abs() <= 1e-5 * d.abs().max(1.0), || {
                format!("alpha_{p}'({h}) = {d}, difference quotient {fd}")
            })?;
        }
    }
    for h in [1.0, 10.0, 100.0] {
        let w = wronskian_min(fin(h)).map_err(|e| e.to_string())?;
        ensure(w > 0.0, || format!("Wronskian minimum {w} at h = {h}"))?;
    }
    Ok(format!(
        "{censuses} censuses, 80 derivative samples, Wronskian positive"
    ))
}
