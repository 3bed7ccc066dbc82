//! Points where the nodal set meets the boundary of the square.
//!
//! For finite `h` these are the zeros of `Φ` restricted to each side. For
//! Dirichlet families `Φ` vanishes on the whole boundary and nodal lines leave
//! it where the normal derivative vanishes, so the census uses those zeros.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::ThetaFamily;
use crate::roots::bisect;
use crate::{Error, Result};

/// Samples per side.
const SAMPLES: usize = 4096;
/// Zeros closer than this are merged.
const MERGE: f64 = 1e-6;
/// Relative size below which a local minimum of `|ψ|` is a tangency.
const TANGENT_RTOL: f64 = 1e-9;
const CORNER_RTOL: f64 = 1e-12;
const ARC_SAMPLES: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `x = -π/2`
    Left,
    /// `x = π/2`
    Right,
    /// `y = -π/2`
    Bottom,
    /// `y = π/2`
    Top,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

    /// Point at parameter `t ∈ [-π/2, π/2]` along the side.
    pub fn point(self, t: f64) -> (f64, f64) {
        match self {
            Side::Left => (-FRAC_PI_2, t),
            Side::Right => (FRAC_PI_2, t),
            Side::Bottom => (t, -FRAC_PI_2),
            Side::Top => (t, FRAC_PI_2),
        }
    }

    /// Polar angle of the inward normal.
    fn inward(self) -> f64 {
        match self {
            Side::Left => 0.0,
            Side::Right => PI,
            Side::Bottom => FRAC_PI_2,
            Side::Top => -FRAC_PI_2,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "bottom" => Ok(Side::Bottom),
            "top" => Ok(Side::Top),
            _ => Err(Error::InvalidParam(format!("unknown side {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    /// `ψ` changes sign.
    Crossing,
    /// `ψ` touches zero without changing sign.
    Tangency,
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryZero {
    /// `None` for corners.
    pub side: Option<Side>,
    pub x: f64,
    pub y: f64,
    pub kind: ZeroKind,
    /// Nodal arcs leaving the point into the square.
    pub arcs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideZeros {
    pub side: Side,
    /// Parameters `t` of the zeros along the side, ascending.
    pub locations: Vec<f64>,
    pub kinds: Vec<ZeroKind>,
}

impl SideZeros {
    pub fn count(&self) -> usize {
        self.locations.len()
    }
}

/// Zeros of `Φ` on one open side. Dirichlet families are rejected because
/// `Φ` vanishes identically there.
pub fn boundary_zero_count(family: &ThetaFamily, side: Side) -> Result<SideZeros> {
    if family.h.is_dirichlet() {
        return Err(Error::Unsupported("boundary zeros of a Dirichlet family"));
    }
    Ok(side_zeros(
        |t| value_on(family, side, t),
        family.scale(),
        side,
    ))
}

fn value_on(family: &ThetaFamily, side: Side, t: f64) -> f64 {
    let (x, y) = side.point(t);
    family.phi(x, y)
}

fn normal_on(family: &ThetaFamily, side: Side, t: f64) -> f64 {
    let (x, y) = side.point(t);
    let g = family.gradient(x, y);
    match side {
        Side::Left | Side::Right => g[0],
        Side::Bottom | Side::Top => g[1],
    }
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

fn root_in<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (lo, hi) = bisect(f, a, b, 1e-14);
    0.5 * (lo + hi)
}

fn side_zeros<F: Fn(f64) -> f64>(psi: F, scale: f64, side: Side) -> SideZeros {
    let step = PI / SAMPLES as f64;
    let ts: Vec<f64> = (1..SAMPLES).map(|i| -FRAC_PI_2 + i as f64 * step).collect();
    let vs: Vec<f64> = ts.iter().map(|&t| psi(t)).collect();
    let mut found: Vec<(f64, ZeroKind)> = Vec::new();
    for i in 0..ts.len() {
        if vs[i] == 0.0 {
            let sides_differ = i > 0 && i + 1 < ts.len() && vs[i - 1] * vs[i + 1] < 0.0;
            let kind = if sides_differ || i == 0 || i + 1 == ts.len() {
                ZeroKind::Crossing
            } else if vs[i - 1] * vs[i + 1] > 0.0 {
                ZeroKind::Tangency
            } else {
                ZeroKind::Crossing
            };
            found.push((ts[i], kind));
            continue;
        }
        if i + 1 < ts.len() && vs[i + 1] != 0.0 && vs[i] * vs[i + 1] < 0.0 {
            found.push((root_in(&psi, ts[i], ts[i + 1]), ZeroKind::Crossing));
        }
        if i == 0 || i + 1 == ts.len() {
            continue;
        }
        let (a, b, c) = (vs[i - 1], vs[i], vs[i + 1]);
        if a * b <= 0.0 || b * c <= 0.0 || b.abs() > a.abs() || b.abs() > c.abs() {
            continue;
        }
        let t = golden_min(|t| psi(t).abs(), ts[i - 1], ts[i + 1]);
        let v = psi(t);
        if v == 0.0 || v.abs() <= TANGENT_RTOL * scale && v * b > 0.0 {
            found.push((t, ZeroKind::Tangency));
        } else if v * b < 0.0 {
            found.push((root_in(&psi, ts[i - 1], t), ZeroKind::Crossing));
            found.push((root_in(&psi, t, ts[i + 1]), ZeroKind::Crossing));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    found.dedup_by(|b, a| b.0 - a.0 < MERGE);
    SideZeros {
        side,
        locations: found.iter().map(|z| z.0).collect(),
        kinds: found.iter().map(|z| z.1).collect(),
    }
}

/// Sign changes of `Φ` along the arc of radius `r` about `(cx, cy)` from
/// angle `a0` to `a1`, sampled at interior points. A full turn is treated
/// cyclically.
pub(crate) fn arc_sign_changes(
    family: &ThetaFamily,
    (cx, cy): (f64, f64),
    r: f64,
    a0: f64,
    a1: f64,
    n: usize,
) -> usize {
    let closed = (a1 - a0 - 2.0 * PI).abs() < 1e-12;
    let signs: Vec<bool> = (0..n)
        .filter_map(|k| {
            let a = a0 + (a1 - a0) * (k as f64 + 0.5) / n as f64;
            let x = (cx + r * a.cos()).clamp(-FRAC_PI_2, FRAC_PI_2);
            let y = (cy + r * a.sin()).clamp(-FRAC_PI_2, FRAC_PI_2);
            let v = family.phi(x, y);
            (v != 0.0).then_some(v > 0.0)
        })
        .collect();
    let mut changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    if closed && signs.len() > 1 && signs[0] != signs[signs.len() - 1] {
        changes += 1;
    }
    changes
}

const CORNERS: [(f64, f64); 4] = [
    (-FRAC_PI_2, -FRAC_PI_2),
    (FRAC_PI_2, -FRAC_PI_2),
    (-FRAC_PI_2, FRAC_PI_2),
    (FRAC_PI_2, FRAC_PI_2),
];

/// Polar angle of the quarter arc's start at a corner, sweeping `π/2` inward.
fn corner_start(x: f64, y: f64) -> f64 {
    match (x > 0.0, y > 0.0) {
        (false, false) => 0.0,
        (true, false) => FRAC_PI_2,
        (true, true) => PI,
        (false, true) => -FRAC_PI_2,
    }
}

/// Radius of the probing arc about a special point.
pub(crate) fn probe_radius(
    at: (f64, f64),
    others: &[(f64, f64)],
    boundary_gap: Option<f64>,
) -> f64 {
    let mut r: f64 = 0.05;
    for &(x, y) in others {
        let d = (x - at.0).hypot(y - at.1);
        if d > 0.0 {
            r = r.min(0.3 * d);
        }
    }
    if let Some(g) = boundary_gap {
        r = r.min(0.45 * g);
    }
    r
}

/// All boundary points of the nodal set, each with its number of nodal arcs.
pub fn census_boundary_points(family: &ThetaFamily) -> Vec<BoundaryZero> {
    let scale = family.scale();
    let dirichlet = family.h.is_dirichlet();
    let mut points = Vec::new();
    for side in Side::ALL {
        let zeros = if dirichlet {
            let gscale = family.gradient_scale();
            side_zeros(|t| normal_on(family, side, t), gscale, side)
        } else {
            side_zeros(|t| value_on(family, side, t), scale, side)
        };
        for (&t, &kind) in zeros.locations.iter().zip(&zeros.kinds) {
            let (x, y) = side.point(t);
            points.push(BoundaryZero {
                side: Some(side),
                x,
                y,
                kind,
                arcs: 0,
            });
        }
    }
    for &(x, y) in &CORNERS {
        let hit = if dirichlet {
            let r = probe_radius((x, y), &[], None).min(1e-3);
            let a0 = corner_start(x, y);
            arc_sign_changes(family, (x, y), r, a0, a0 + FRAC_PI_2, 90) > 0
        } else {
            family.phi(x, y).abs() <= CORNER_RTOL * scale
        };
        if hit {
            points.push(BoundaryZero {
                side: None,
                x,
                y,
                kind: ZeroKind::Corner,
                arcs: 0,
            });
        }
    }
    let locs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.x, p.y))
        .chain(CORNERS.iter().copied())
        .collect();
    for p in &mut points {
        let (start, sweep) = match p.side {
            Some(side) => (side.inward() - FRAC_PI_2, PI),
            None => (corner_start(p.x, p.y), FRAC_PI_2),
        };
        let r = probe_radius((p.x, p.y), &locs, None);
        p.arcs = arc_sign_changes(family, (p.x, p.y), r, start, start + sweep, ARC_SAMPLES);
    }
    points
}
