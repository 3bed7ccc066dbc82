//! Interior points where both `Φ` and `∇Φ` vanish, that is, crossings of
//! nodal lines.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::boundary::{arc_sign_changes, probe_radius};
use super::ThetaFamily;

/// Seed grid cells per axis.
const SEEDS: usize = 384;
/// Candidates closer than this to the boundary are dropped; Dirichlet
/// families have degenerate critical points at the corners.
const EDGE_GAP: f64 = 1e-3;
const PHI_RTOL: f64 = 1e-6;
/// Candidates closer than this are one point. Degenerate crossings stall
/// the polish short of the exact point, so this is well above its tolerance.
const DEDUP: f64 = 1e-3;
const CIRCLE_SAMPLES: usize = 1440;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    /// Nodal arcs meeting at the point, counted as sign changes on a small
    /// circle. Always even.
    pub valence: usize,
}

fn changes_sign(v: [f64; 4]) -> bool {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    lo <= 0.0 && hi >= 0.0
}

/// Levenberg–Marquardt on `∇Φ = 0` with the analytic Hessian.
fn polish(family: &ThetaFamily, mut x: f64, mut y: f64, gtol: f64) -> Option<(f64, f64)> {
    let mut mu = 0.0;
    let mut g = family.gradient(x, y);
    let mut norm = g[0].hypot(g[1]);
    for _ in 0..100 {
        if norm <= gtol {
            return Some((x, y));
        }
        let [hxx, hxy, hyy] = family.hessian(x, y);
        let (a, d) = (hxx + mu, hyy + mu);
        let det = a * d - hxy * hxy;
        if det == 0.0 || !det.is_finite() {
            mu = mu.max(1e-6 * (hxx.abs() + hyy.abs() + 1.0)) * 10.0;
            continue;
        }
        let dx = -(d * g[0] - hxy * g[1]) / det;
        let dy = -(a * g[1] - hxy * g[0]) / det;
        let (nx, ny) = (x + dx, y + dy);
        if nx.abs() >= FRAC_PI_2 || ny.abs() >= FRAC_PI_2 {
            mu = mu.max(1e-3) * 10.0;
            continue;
        }
        let ng = family.gradient(nx, ny);
        let nn = ng[0].hypot(ng[1]);
        if nn < norm {
            (x, y, g, norm) = (nx, ny, ng, nn);
            mu *= 0.1;
        } else {
            mu = mu.max(1e-6 * (hxx.abs() + hyy.abs())) * 10.0;
            if mu > 1e12 {
                break;
            }
        }
    }
    (norm <= gtol).then_some((x, y))
}

/// Interior zeros of `Φ` with vanishing gradient, with their valence.
pub fn interior_critical_points(family: &ThetaFamily) -> Vec<CriticalPoint> {
    let step = PI / SEEDS as f64;
    let coord = |i: usize| -FRAC_PI_2 + i as f64 * step;
    let grads: Vec<[f64; 2]> = (0..=SEEDS)
        .flat_map(|j| (0..=SEEDS).map(move |i| (i, j)))
        .map(|(i, j)| family.gradient(coord(i), coord(j)))
        .collect();
    let at = |i: usize, j: usize| grads[j * (SEEDS + 1) + i];
    let gtol = 1e-12 * family.gradient_scale();
    let scale = family.scale();
    let mut found: Vec<(f64, f64, f64)> = Vec::new();
    for j in 0..SEEDS {
        for i in 0..SEEDS {
            let c = [at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)];
            if !changes_sign(c.map(|g| g[0])) || !changes_sign(c.map(|g| g[1])) {
                continue;
            }
            let (x0, y0) = (coord(i) + 0.5 * step, coord(j) + 0.5 * step);
            let Some((x, y)) = polish(family, x0, y0, gtol) else {
                continue;
            };
            if FRAC_PI_2 - x.abs() < EDGE_GAP || FRAC_PI_2 - y.abs() < EDGE_GAP {
                continue;
            }
            if family.phi(x, y).abs() > PHI_RTOL * scale {
                continue;
            }
            let g = family.gradient(x, y);
            let norm = g[0].hypot(g[1]);
            match found
                .iter_mut()
                .find(|(u, v, _)| (u - x).hypot(v - y) <= DEDUP)
            {
                Some(best) if norm < best.2 => *best = (x, y, norm),
                Some(_) => {}
                None => found.push((x, y, norm)),
            }
        }
    }
    let mut found: Vec<(f64, f64)> = found.into_iter().map(|(x, y, _)| (x, y)).collect();
    found.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
    found
        .iter()
        .map(|&(x, y)| {
            let gap = FRAC_PI_2 - x.abs().max(y.abs());
            let r = probe_radius((x, y), &found, Some(gap));
            CriticalPoint {
                x,
                y,
                valence: arc_sign_changes(family, (x, y), r, 0.0, 2.0 * PI, CIRCLE_SAMPLES),
            }
        })
        .collect()
}
