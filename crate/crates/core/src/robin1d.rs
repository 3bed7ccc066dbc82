//! One-dimensional Robin problem on `(-π/2, π/2)`.
//!
//! `-u'' = (α/π)² u` with `±u' + h u = 0` at `x = ±π/2`. For each branch
//! index `p` there is exactly one `α_p(h)` in `[pπ, (p+1)π)`, solving
//! `α tan(α/2) = hπ` for even `p` and `α cot(α/2) = -hπ` for odd `p`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::roots::bisect_newton;
use crate::{Error, Result};

/// Robin parameter `h ∈ [0, +∞]`; `Dirichlet` is the exact `h = +∞` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RobinParam {
    Finite(f64),
    Dirichlet,
}

impl RobinParam {
    pub const NEUMANN: RobinParam = RobinParam::Finite(0.0);
    pub const DIRICHLET: RobinParam = RobinParam::Dirichlet;

    /// Accepts finite `h >= 0` and `+∞`.
    pub fn new(h: f64) -> Result<Self> {
        if h.is_nan() || h < 0.0 {
            return Err(Error::InvalidParam(format!("{h} (need h >= 0)")));
        }
        if h == f64::INFINITY {
            return Ok(RobinParam::Dirichlet);
        }
        Ok(RobinParam::Finite(h))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            RobinParam::Finite(h) => Some(h),
            RobinParam::Dirichlet => None,
        }
    }

    /// `h` as a float, `+∞` for Dirichlet.
    pub fn value(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    pub fn is_dirichlet(self) -> bool {
        matches!(self, RobinParam::Dirichlet)
    }

    pub fn is_neumann(self) -> bool {
        self == RobinParam::NEUMANN
    }

    /// `0 < h < ∞`.
    pub fn is_interior(self) -> bool {
        matches!(self, RobinParam::Finite(h) if h > 0.0)
    }
}

impl fmt::Display for RobinParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobinParam::Finite(h) => write!(f, "{h}"),
            RobinParam::Dirichlet => f.write_str("inf"),
        }
    }
}

impl FromStr for RobinParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "inf" | "+inf" | "infinity" | "dirichlet" => Ok(RobinParam::Dirichlet),
            "neumann" => Ok(RobinParam::NEUMANN),
            _ => {
                let h: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidParam(format!("cannot parse {s:?}")))?;
                RobinParam::new(h)
            }
        }
    }
}

impl Serialize for RobinParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RobinParam::Finite(h) => s.serialize_f64(*h),
            RobinParam::Dirichlet => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RobinParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(h) => RobinParam::new(h).map_err(serde::de::Error::custom),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(p: u32) -> Self {
        if p.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^p`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// A solved branch value `α_p(h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaSolution {
    pub p: u32,
    pub h: RobinParam,
    pub alpha: f64,
    pub parity: Parity,
}

/// Smooth form of the branch equation: `α sin(α/2) - hπ cos(α/2)` for even
/// `p`, `α cos(α/2) + hπ sin(α/2)` for odd `p`. Same roots as the tangent
/// forms without the poles.
fn secular(parity: Parity, h: f64, a: f64) -> f64 {
    let (s, c) = (0.5 * a).sin_cos();
    match parity {
        Parity::Even => a * s - h * PI * c,
        Parity::Odd => a * c + h * PI * s,
    }
}

fn secular_prime(parity: Parity, h: f64, a: f64) -> f64 {
    let (s, c) = (0.5 * a).sin_cos();
    let hp = 0.5 * h * PI;
    match parity {
        Parity::Even => s + 0.5 * a * c + hp * s,
        Parity::Odd => c - 0.5 * a * s + hp * c,
    }
}

/// Root-finder settings for `α_p(h)`. The default bisects to width `1e-6`
/// and then Newton-polishes the residual to `1e-13`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSolver {
    pub bisect_width: f64,
    pub polish: bool,
}

impl Default for AlphaSolver {
    fn default() -> Self {
        AlphaSolver {
            bisect_width: 1e-6,
            polish: true,
        }
    }
}

impl AlphaSolver {
    /// A deliberately coarse solver: bisection to `tol`, no polish.
    pub fn coarse(tol: f64) -> Self {
        AlphaSolver {
            bisect_width: tol,
            polish: false,
        }
    }

    pub fn solve(&self, p: u32, h: RobinParam) -> AlphaSolution {
        let parity = Parity::of(p);
        let lo = p as f64 * PI;
        let hi = (p + 1) as f64 * PI;
        let alpha = match h {
            RobinParam::Finite(0.0) => lo,
            RobinParam::Dirichlet => hi,
            RobinParam::Finite(v) => {
                let f = |a: f64| secular(parity, v, a);
                if self.polish {
                    let tol = 1e-13 * (v * PI).max(1.0);
                    bisect_newton(
                        f,
                        |a| secular_prime(parity, v, a),
                        lo,
                        hi,
                        self.bisect_width,
                        tol,
                    )
                } else {
                    let (a, b) = crate::roots::bisect(f, lo, hi, self.bisect_width);
                    0.5 * (a + b)
                }
            }
        };
        AlphaSolution {
            p,
            h,
            alpha,
            parity,
        }
    }
}

/// `α_p(h)` with the default solver.
pub fn solve_alpha(p: u32, h: RobinParam) -> AlphaSolution {
    AlphaSolver::default().solve(p, h)
}

impl AlphaSolution {
    /// Residual of the smooth branch equation divided by `max(1, hπ)`;
    /// zero at the exact endpoints `h = 0` and `h = ∞`.
    pub fn residual(&self) -> f64 {
        match self.h {
            RobinParam::Finite(h) if h > 0.0 => {
                secular(self.parity, h, self.alpha).abs() / (h * PI).max(1.0)
            }
            _ => 0.0,
        }
    }

    /// Wavenumber `α/π` of the trigonometric factor.
    pub fn wavenumber(&self) -> f64 {
        self.alpha / PI
    }

    /// Unnormalized factor `cos(αx/π)` (even) or `sin(αx/π)` (odd). Valid for
    /// every `h ∈ [0, ∞]` and proportional to `u_p` for `0 < h < ∞`.
    pub fn trig(&self, x: f64) -> f64 {
        let k = self.wavenumber();
        match self.parity {
            Parity::Even => (k * x).cos(),
            Parity::Odd => (k * x).sin(),
        }
    }

    /// Value and first two derivatives of [`trig`](Self::trig).
    pub fn trig_jet(&self, x: f64) -> [f64; 3] {
        let k = self.wavenumber();
        let (s, c) = (k * x).sin_cos();
        match self.parity {
            Parity::Even => [c, -k * s, -k * k * c],
            Parity::Odd => [s, k * c, -k * k * s],
        }
    }

    /// Normalization `1/sin(α/2)` or `1/cos(α/2)`; `None` at `h ∈ {0, ∞}`
    /// where it diverges.
    pub fn normalization(&self) -> Option<f64> {
        if !self.h.is_interior() {
            return None;
        }
        let (s, c) = (0.5 * self.alpha).sin_cos();
        Some(match self.parity {
            Parity::Even => 1.0 / s,
            Parity::Odd => 1.0 / c,
        })
    }
}

/// `u_p(x)`: `cos(αx/π)/sin(α/2)` for even `p`, `sin(αx/π)/cos(α/2)` for odd
/// `p`. At `h = 0` and `h = ∞` the normalization diverges and the bare
/// trigonometric factor is returned instead.
pub fn eval_u1d(sol: &AlphaSolution, x: f64) -> Result<f64> {
    if !(x.abs() <= FRAC_PI_2) {
        return Err(Error::OutsideInterval(x));
    }
    Ok(sol.trig(x) * sol.normalization().unwrap_or(1.0))
}

/// `dα_p/dh = πα / (hπ + α²/2 + h²π²/2)` for `0 < h < ∞`.
pub fn alpha_derivative(p: u32, h: RobinParam) -> Result<f64> {
    let sol = solve_alpha(p, h);
    derivative_at(&sol)
}

pub(crate) fn derivative_at(sol: &AlphaSolution) -> Result<f64> {
    let h = match sol.h {
        RobinParam::Finite(h) if h > 0.0 => h,
        _ => {
            return Err(Error::precondition(
                "alpha_derivative",
                format!("0 < h < inf, got h = {}", sol.h),
            ))
        }
    };
    Ok(PI * sol.alpha / a_coefficient(h, sol.alpha))
}

/// `a(h) = hπ + α²/2 + h²π²/2`.
pub(crate) fn a_coefficient(h: f64, alpha: f64) -> f64 {
    h * PI + 0.5 * alpha * alpha + 0.5 * h * h * PI * PI
}

/// One row of [`alpha_asymptotic_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub h: f64,
    pub alpha: f64,
    pub expansion: f64,
    /// `(α_p(h) - expansion)·h²`.
    pub scaled_residual: f64,
}

/// Compares `α_p(h)` with the large-`h` expansion `(p+1)π - 2(p+1)/h`.
pub fn alpha_asymptotic_check(p: u32, hs: &[f64]) -> Result<Vec<AsymptoticRow>> {
    hs.iter()
        .map(|&h| {
            if !(h >= 10.0) || !h.is_finite() {
                return Err(Error::precondition(
                    "alpha_asymptotic_check",
                    format!("finite h >= 10, got {h}"),
                ));
            }
            let alpha = solve_alpha(p, RobinParam::Finite(h)).alpha;
            let m = (p + 1) as f64;
            let expansion = m * PI - 2.0 * m / h;
            Ok(AsymptoticRow {
                h,
                alpha,
                expansion,
                scaled_residual: (alpha - expansion) * h * h,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(h: f64) -> RobinParam {
        RobinParam::new(h).unwrap()
    }

    #[test]
    fn endpoints_are_exact() {
        assert_eq!(solve_alpha(2, RobinParam::NEUMANN).alpha, 2.0 * PI);
        assert_eq!(solve_alpha(1, RobinParam::DIRICHLET).alpha, 2.0 * PI);
        assert_eq!(solve_alpha(0, RobinParam::NEUMANN).alpha, 0.0);
    }

    #[test]
    fn ground_branch_matches_plain_bisection() {
        // α tan(α/2) = π on (0, π), 60 halvings of the tangent form.
        let g = |a: f64| a * (0.5 * a).tan() - PI;
        let (mut lo, mut hi) = (1e-12, PI - 1e-12);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = solve_alpha(0, fin(1.0)).alpha;
        assert!((a - 0.5 * (lo + hi)).abs() < 1e-12, "{a} vs {lo}");
        assert!((a - 2.005_348_529_972_237).abs() < 1e-12);
    }

    #[test]
    fn robin_boundary_residual() {
        let sol = solve_alpha(0, fin(1.0));
        let x = FRAC_PI_2;
        let step = 1e-6;
        let u = eval_u1d(&sol, x).unwrap();
        let du = (u - eval_u1d(&sol, x - step).unwrap()) / step;
        // one-sided difference; error O(step)
        assert!((du + 1.0 * u).abs() < 1e-5);
        let k = sol.wavenumber();
        let exact = -k * (k * x).sin() * sol.normalization().unwrap();
        assert!((exact + u).abs() < 1e-12);
    }

    #[test]
    fn eigenfunction_values_at_origin() {
        let even = solve_alpha(4, fin(2.0));
        let u0 = eval_u1d(&even, 0.0).unwrap();
        assert!((u0 - 1.0 / (0.5 * even.alpha).sin()).abs() < 1e-14);
        let odd = solve_alpha(3, fin(2.0));
        assert_eq!(eval_u1d(&odd, 0.0).unwrap(), 0.0);
        assert!(eval_u1d(&odd, 1.6).is_err());
    }

    #[test]
    fn dirichlet_factor_is_limit_form() {
        for p in 0..5u32 {
            let sol = solve_alpha(p, RobinParam::DIRICHLET);
            for &x in &[-1.2, -0.3, 0.4, 1.5] {
                let m = (p + 1) as f64;
                let expect = if p % 2 == 0 {
                    (m * x).cos()
                } else {
                    (m * x).sin()
                };
                assert!((eval_u1d(&sol, x).unwrap() - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for p in 0..6u32 {
            for &h in &[0.01, 0.3, 1.0, 7.0, 80.0] {
                let d = alpha_derivative(p, fin(h)).unwrap();
                let s = 1e-5 * h.max(1e-2);
                let fd = (solve_alpha(p, fin(h + s)).alpha - solve_alpha(p, fin(h - s)).alpha)
                    / (2.0 * s);
                assert!(((d - fd) / d).abs() < 1e-6, "p={p} h={h}: {d} vs {fd}");
            }
        }
    }

    #[test]
    fn derivative_rejects_endpoints() {
        assert!(alpha_derivative(0, RobinParam::NEUMANN).is_err());
        assert!(alpha_derivative(0, RobinParam::DIRICHLET).is_err());
    }

    #[test]
    fn large_h_slope() {
        let h = 100.0;
        let d = alpha_derivative(1, fin(h)).unwrap();
        assert!((d * h * h / 4.0 - 1.0).abs() < 0.05, "{}", d * h * h);
    }

    #[test]
    fn asymptotic_residual_is_bounded() {
        let rows = alpha_asymptotic_check(1, &[100.0, 300.0, 1000.0]).unwrap();
        let r: Vec<f64> = rows.iter().map(|r| r.scaled_residual).collect();
        assert!(r.iter().all(|v| v.abs() < 20.0), "{r:?}");
        assert!((r[2] - r[1]).abs() < (r[1] - r[0]).abs());
        let five = alpha_asymptotic_check(5, &[1e6]).unwrap();
        assert!((five[0].alpha - 6.0 * PI).abs() < 2e-5);
        assert!(alpha_asymptotic_check(1, &[0.0]).is_err());
    }

    #[test]
    fn param_parsing() {
        assert_eq!("inf".parse::<RobinParam>().unwrap(), RobinParam::DIRICHLET);
        assert_eq!(
            "Infinity".parse::<RobinParam>().unwrap(),
            RobinParam::DIRICHLET
        );
        assert_eq!(
            "1.5".parse::<RobinParam>().unwrap(),
            RobinParam::Finite(1.5)
        );
        assert!("-1".parse::<RobinParam>().is_err());
        assert!("nan".parse::<RobinParam>().is_err());
        assert!("abc".parse::<RobinParam>().is_err());
        assert_eq!(
            RobinParam::new(f64::INFINITY).unwrap(),
            RobinParam::DIRICHLET
        );
    }

    #[test]
    fn coarse_solver_is_visibly_off() {
        let good = solve_alpha(3, fin(2.0)).alpha;
        let bad = AlphaSolver::coarse(1e-2).solve(3, fin(2.0)).alpha;
        assert!((good - bad).abs() > 1e-6);
        assert!((good - bad).abs() < 1e-2);
    }
}
