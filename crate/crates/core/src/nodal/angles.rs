//! Transition angles of the `λ₅` family `(p, q) = (0, 2)` and of the
//! `(5, 1)` family at large `h`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use super::census::{census_with, CensusOptions};
use super::ThetaFamily;
use crate::robin1d::{solve_alpha, RobinParam};
use crate::roots::bisect_newton;
use crate::{Error, Result};

/// Smallest `h` accepted by the `(5, 1)` angle functions.
const LARGE_H: f64 = 10.0;
/// Smallest `h` for which the `(0, 2)` census pattern is asserted.
pub const SWEEP_FLOOR: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalAngles5 {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    /// `cos(α₂/2)/cos(α₀/2)`, equal to its limit `-3` at `h = ∞`.
    pub q2: f64,
}

/// Angles at which the nodal count of `cos θ u₀(x)u₂(y) + sin θ u₂(x)u₀(y)`
/// changes.
pub fn critical_angles_5(h: RobinParam) -> CriticalAngles5 {
    let q2 = match h {
        RobinParam::Dirichlet => -3.0,
        _ => {
            let (a0, a2) = (solve_alpha(0, h).alpha, solve_alpha(2, h).alpha);
            (0.5 * a2).cos() / (0.5 * a0).cos()
        }
    };
    let theta1 = (-1.0 / q2).atan().rem_euclid(PI);
    CriticalAngles5 {
        theta1,
        theta2: FRAC_PI_2 - theta1,
        theta3: 3.0 * FRAC_PI_4,
        q2,
    }
}

/// One representative angle from each of the five ranges `[0, θ₁]`,
/// `(θ₁, θ₂)`, `[θ₂, θ₃)`, `{θ₃}` and `(θ₃, π)`.
pub fn sweep_thetas_5(h: RobinParam) -> [f64; 5] {
    let a = critical_angles_5(h);
    [
        0.5 * a.theta1,
        FRAC_PI_4,
        0.5 * (a.theta2 + a.theta3),
        a.theta3,
        7.0 * PI / 8.0,
    ]
}

/// Nodal domain counts of the `(0, 2)` family at the given angles.
pub fn census_sweep_5(
    h: RobinParam,
    thetas: &[f64],
    opts: &CensusOptions,
) -> Result<Vec<(f64, usize)>> {
    if h.value() < SWEEP_FLOOR {
        return Err(Error::precondition(
            "census_sweep_5",
            format!("h >= {SWEEP_FLOOR}, got {h}"),
        ));
    }
    thetas
        .iter()
        .map(|&t| {
            let family = ThetaFamily::new(h, t, 0, 2)?;
            Ok((t, census_with(&family, opts)?.domains))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalAngles25 {
    pub x_c: f64,
    pub theta_m: f64,
    pub theta_t: f64,
    /// `θ_m + θ_t - π/2`.
    pub delta_theta: f64,
}

fn require_large(op: &'static str, h: RobinParam) -> Result<(f64, f64)> {
    if h.value() < LARGE_H {
        return Err(Error::precondition(op, format!("h >= {LARGE_H}, got {h}")));
    }
    Ok((solve_alpha(1, h).alpha, solve_alpha(5, h).alpha))
}

/// `sin(α₁/2)/sin(α₅/2)`, with its limit `1/3` at `h = ∞`.
fn half_sine_ratio(h: RobinParam, a1: f64, a5: f64) -> f64 {
    if h.is_dirichlet() {
        1.0 / 3.0
    } else {
        (0.5 * a1).sin() / (0.5 * a5).sin()
    }
}

fn xc_from(a1: f64, a5: f64) -> Result<f64> {
    let (k1, k5) = (a1 / PI, a5 / PI);
    let f = |x: f64| a5 * (k5 * x).cos() * (k1 * x).sin() - a1 * (k1 * x).cos() * (k5 * x).sin();
    let df = |x: f64| (k5 * x).sin() * (k1 * x).sin() * (a1 * a1 - a5 * a5) / PI;
    let (lo, hi) = (PI / 8.0, 3.0 * PI / 8.0);
    if f(lo) * f(hi) > 0.0 {
        return Err(Error::NoBracket { lo, hi });
    }
    Ok(bisect_newton(f, df, lo, hi, 1e-6, 1e-15 * a5 * a5))
}

/// Root near `π/4` of `α₅ cot(α₅x/π) = α₁ cot(α₁x/π)`.
pub fn solve_xc(h: RobinParam) -> Result<f64> {
    let (a1, a5) = require_large("solve_xc", h)?;
    if h.is_dirichlet() {
        return Ok(FRAC_PI_4);
    }
    xc_from(a1, a5)
}

pub fn critical_angles_25(h: RobinParam) -> Result<CriticalAngles25> {
    let (a1, a5) = require_large("critical_angles_25", h)?;
    let x_c = solve_xc(h)?;
    let (s1, s5) = ((a1 * x_c / PI).sin(), (a5 * x_c / PI).sin());
    let theta_m = (-s5 * half_sine_ratio(h, a1, a5) / s1)
        .atan()
        .rem_euclid(PI);
    let theta_t = (-a5 * s1 / (a1 * s5)).atan().rem_euclid(PI);
    Ok(CriticalAngles25 {
        x_c,
        theta_m,
        theta_t,
        delta_theta: theta_m + theta_t - FRAC_PI_2,
    })
}

/// Angle at which the nodal lines of the `(5, 1)` family touch the sides.
pub fn theta_m(h: RobinParam) -> Result<f64> {
    Ok(critical_angles_25(h)?.theta_m)
}

/// Angle at which two interior crossings of the `(5, 1)` family merge.
pub fn theta_t(h: RobinParam) -> Result<f64> {
    Ok(critical_angles_25(h)?.theta_t)
}

/// `g(h) = α₅ sin(α₁/2) / (α₁ sin(α₅/2))`.
pub fn g_function(h: RobinParam) -> Result<f64> {
    let (a1, a5) = require_large("g_function", h)?;
    Ok(a5 * half_sine_ratio(h, a1, a5) / a1)
}

fn wronskian(a0: f64, a2: f64, x: f64) -> f64 {
    let (s0, c0) = (a0 * x / PI).sin_cos();
    let (s2, c2) = (a2 * x / PI).sin_cos();
    a0 * s0 * c2 - a2 * s2 * c0
}

/// Minimum of `|α₀ sin(α₀x/π) cos(α₂x/π) - α₂ sin(α₂x/π) cos(α₀x/π)|` over
/// `[10⁻³, π/2 - 10⁻³]`.
pub fn wronskian_min(h: RobinParam) -> Result<f64> {
    if !h.is_interior() {
        return Err(Error::precondition(
            "wronskian_min",
            format!("0 < h < inf, got {h}"),
        ));
    }
    let (a0, a2) = (solve_alpha(0, h).alpha, solve_alpha(2, h).alpha);
    let w = |x: f64| wronskian(a0, a2, x).abs();
    let (lo, hi) = (1e-3, FRAC_PI_2 - 1e-3);
    let n = 4096;
    let step = (hi - lo) / n as f64;
    let (mut best, mut at) = (f64::INFINITY, 0);
    for i in 0..=n {
        let v = w(lo + i as f64 * step);
        if v < best {
            (best, at) = (v, i);
        }
    }
    let a = (lo + (at as f64 - 1.0) * step).max(lo);
    let b = (lo + (at as f64 + 1.0) * step).min(hi);
    let (mut a, mut b) = (a, b);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if w(c) < w(d) {
            b = d;
        } else {
            a = c;
        }
    }
    Ok(best.min(w(0.5 * (a + b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_limits() {
        let a = critical_angles_5(RobinParam::DIRICHLET);
        assert!((a.theta1 - (1.0f64 / 3.0).atan()).abs() < 1e-15);
        let h = RobinParam::Finite(1e7);
        let b = critical_angles_5(h);
        assert!((b.q2 + 3.0).abs() < 1e-5);
        assert!((b.theta2 - (FRAC_PI_2 - b.theta1)).abs() < 1e-15);
        let c = critical_angles_25(RobinParam::DIRICHLET).unwrap();
        assert_eq!(c.x_c, FRAC_PI_4);
        assert!((c.theta_m - (1.0f64 / 3.0).atan()).abs() < 1e-12);
        assert!((FRAC_PI_2 - c.theta_t - (1.0f64 / 3.0).atan()).abs() < 1e-12);
        assert_eq!(g_function(RobinParam::DIRICHLET).unwrap(), 1.0);
    }

    #[test]
    fn xc_satisfies_cotangent_equation() {
        for h in [10.0, 20.0, 300.0] {
            let h = RobinParam::Finite(h);
            let x = solve_xc(h).unwrap();
            let (a1, a5) = (solve_alpha(1, h).alpha, solve_alpha(5, h).alpha);
            let lhs = a5 / (a5 * x / PI).tan();
            let rhs = a1 / (a1 * x / PI).tan();
            assert!((lhs - rhs).abs() < 1e-9 * a5);
        }
        assert!(solve_xc(RobinParam::Finite(5.0)).is_err());
    }

    #[test]
    fn wronskian_against_dense_sampling() {
        for h in [1.0, 10.0, 100.0] {
            let h = RobinParam::Finite(h);
            let (a0, a2) = (solve_alpha(0, h).alpha, solve_alpha(2, h).alpha);
            let n = 100_000;
            let (lo, hi) = (1e-3, FRAC_PI_2 - 1e-3);
            let dense = (0..=n)
                .map(|i| wronskian(a0, a2, lo + (hi - lo) * i as f64 / n as f64).abs())
                .fold(f64::INFINITY, f64::min);
            let m = wronskian_min(h).unwrap();
            assert!(m > 0.0 && m <= dense && m > dense * (1.0 - 1e-6));
        }
        assert_eq!(wronskian(2.0, 7.0, 0.0), 0.0);
    }
}
