//! Two-term eigenfunction families on the square and their nodal structure.
//!
//! `Φ_θ(x, y) = cos θ u_p(x) u_q(y) + sin θ u_p(y) u_q(x)` spans the
//! eigenspace of `λ_{p,q} = λ_{q,p}`. Only the sign pattern matters for nodal
//! counts, so the unnormalized trigonometric factors are used throughout; the
//! normalizations of `u_p` and `u_q` multiply both terms equally.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::robin1d::{solve_alpha, AlphaSolution, RobinParam};
use crate::{Error, Result};

pub mod angles;
pub mod boundary;
pub mod census;
pub mod contour;
pub mod critical;
pub mod euler;

pub use angles::{
    census_sweep_5, critical_angles_25, critical_angles_5, g_function, solve_xc, sweep_thetas_5,
    theta_m, theta_t, wronskian_min, CriticalAngles25, CriticalAngles5,
};
pub use boundary::{boundary_zero_count, BoundaryZero, Side, SideZeros, ZeroKind};
pub use census::{census_with, count_nodal_domains, CensusOptions, NodalCensus};
pub use contour::nodal_polylines;
pub use critical::{interior_critical_points, CriticalPoint};
pub use euler::{euler_count_check, EulerReport};

/// Angles this close to a multiple of `π/4` are snapped to it.
const SNAP: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaFamily {
    pub h: RobinParam,
    /// `θ` reduced into `[0, π)`.
    pub theta: f64,
    pub p: u32,
    pub q: u32,
    /// `(p + q) mod 2`; odd families are antisymmetric under `(x,y) → (-x,-y)`.
    pub symmetric_factor: u32,
    /// `θ` was shifted by an odd multiple of `π`, which flips the sign of `Φ`.
    pub flipped: bool,
    #[serde(skip)]
    up: AlphaSolution,
    #[serde(skip)]
    uq: AlphaSolution,
    #[serde(skip)]
    c: f64,
    #[serde(skip)]
    s: f64,
}

impl ThetaFamily {
    pub fn new(h: RobinParam, theta: f64, p: u32, q: u32) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::precondition(
                "ThetaFamily",
                format!("finite theta, got {theta}"),
            ));
        }
        let reduced = theta.rem_euclid(PI);
        let turns = ((theta - reduced) / PI).round() as i64;
        let flipped = turns.rem_euclid(2) == 1;
        let (mut s, mut c) = reduced.sin_cos();
        if c.abs() < SNAP {
            c = 0.0;
        }
        if s.abs() < SNAP {
            s = 0.0;
        }
        if (c + s).abs() < SNAP {
            s = -c;
        }
        if (c - s).abs() < SNAP {
            s = c;
        }
        if flipped {
            c = -c;
            s = -s;
        }
        Ok(ThetaFamily {
            h,
            theta: reduced,
            p,
            q,
            symmetric_factor: (p + q) % 2,
            flipped,
            up: solve_alpha(p, h),
            uq: solve_alpha(q, h),
            c,
            s,
        })
    }

    /// The single product mode `u_p(x) u_q(y)` (`θ = 0`).
    pub fn single(h: RobinParam, p: u32, q: u32) -> Result<Self> {
        Self::new(h, 0.0, p, q)
    }

    /// `(cos θ, sin θ)` after snapping, including the sign flip.
    pub fn coefficients(&self) -> (f64, f64) {
        (self.c, self.s)
    }

    pub fn alphas(&self) -> (&AlphaSolution, &AlphaSolution) {
        (&self.up, &self.uq)
    }

    /// `λ_{p,q,h}`.
    pub fn lambda(&self) -> f64 {
        (self.up.alpha.powi(2) + self.uq.alpha.powi(2)) / (PI * PI)
    }

    /// Upper bound for `|Φ|` on the square.
    pub fn scale(&self) -> f64 {
        self.c.abs() + self.s.abs()
    }

    /// Upper bound for `|∇Φ|` on the square.
    pub fn gradient_scale(&self) -> f64 {
        self.scale() * (self.up.wavenumber() + self.uq.wavenumber()).max(1.0)
    }

    pub(crate) fn factor(&self, sol: &AlphaSolution, x: f64) -> f64 {
        if self.h.is_dirichlet() && x.abs() >= FRAC_PI_2 {
            0.0
        } else {
            sol.trig(x)
        }
    }

    /// Factor values `(u_p(x), u_q(x))` with exact Dirichlet zeros.
    pub(crate) fn factors_at(&self, x: f64) -> (f64, f64) {
        (self.factor(&self.up, x), self.factor(&self.uq, x))
    }

    /// `Φ(x, y)` without the domain check.
    pub fn phi(&self, x: f64, y: f64) -> f64 {
        let (px, qx) = self.factors_at(x);
        let (py, qy) = self.factors_at(y);
        self.c * px * qy + self.s * py * qx
    }

    pub fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let (px, qx) = (self.up.trig_jet(x), self.uq.trig_jet(x));
        let (py, qy) = (self.up.trig_jet(y), self.uq.trig_jet(y));
        [
            self.c * px[1] * qy[0] + self.s * py[0] * qx[1],
            self.c * px[0] * qy[1] + self.s * py[1] * qx[0],
        ]
    }

    /// `[Φ_xx, Φ_xy, Φ_yy]`.
    pub fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        let (px, qx) = (self.up.trig_jet(x), self.uq.trig_jet(x));
        let (py, qy) = (self.up.trig_jet(y), self.uq.trig_jet(y));
        [
            self.c * px[2] * qy[0] + self.s * py[0] * qx[2],
            self.c * px[1] * qy[1] + self.s * py[1] * qx[1],
            self.c * px[0] * qy[2] + self.s * py[2] * qx[0],
        ]
    }
}

fn in_square(x: f64, y: f64) -> bool {
    x.abs() <= FRAC_PI_2 && y.abs() <= FRAC_PI_2
}

/// `Φ(x, y)` on the closed square.
pub fn eval_phi(family: &ThetaFamily, x: f64, y: f64) -> Result<f64> {
    if !in_square(x, y) {
        return Err(Error::OutsideSquare(x, y));
    }
    Ok(family.phi(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_vanishes_at_three_quarters() {
        for h in [
            RobinParam::Finite(0.3),
            RobinParam::Finite(100.0),
            RobinParam::DIRICHLET,
        ] {
            let f = ThetaFamily::new(h, 3.0 * PI / 4.0, 0, 2).unwrap();
            for &t in &[-1.3, -0.2, 0.7, 1.5] {
                assert_eq!(eval_phi(&f, t, t).unwrap(), 0.0);
                assert_eq!(eval_phi(&f, t, -t).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn odd_family_vanishes_at_origin() {
        let f = ThetaFamily::new(RobinParam::Finite(2.0), 0.4, 5, 2).unwrap();
        assert_eq!(f.symmetric_factor, 1);
        assert_eq!(eval_phi(&f, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn dirichlet_limit_form() {
        let f = ThetaFamily::new(RobinParam::DIRICHLET, 0.0, 0, 2).unwrap();
        for &(x, y) in &[(0.1, 0.2), (-1.0, 0.9), (1.5, -1.4)] {
            let v = eval_phi(&f, x, y).unwrap();
            assert!((v - x.cos() * (3.0 * y).cos()).abs() < 1e-14);
        }
        assert_eq!(f.phi(FRAC_PI_2, 0.3), 0.0);
    }

    #[test]
    fn theta_reduction_flips_sign() {
        let h = RobinParam::Finite(1.0);
        let a = ThetaFamily::new(h, 0.3, 1, 2).unwrap();
        let b = ThetaFamily::new(h, 0.3 + PI, 1, 2).unwrap();
        assert!(b.flipped && !a.flipped);
        assert!((a.theta - b.theta).abs() < 1e-14);
        assert!((a.phi(0.4, -0.7) + b.phi(0.4, -0.7)).abs() < 1e-14);
    }

    #[test]
    fn rejects_points_outside() {
        let f = ThetaFamily::new(RobinParam::Finite(1.0), 0.0, 0, 0).unwrap();
        assert!(eval_phi(&f, 1.6, 0.0).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let f = ThetaFamily::new(RobinParam::Finite(3.0), 0.7, 5, 1).unwrap();
        let (x, y, e) = (0.3, -0.55, 1e-6);
        let g = f.gradient(x, y);
        let gx = (f.phi(x + e, y) - f.phi(x - e, y)) / (2.0 * e);
        let gy = (f.phi(x, y + e) - f.phi(x, y - e)) / (2.0 * e);
        assert!((g[0] - gx).abs() < 1e-7 && (g[1] - gy).abs() < 1e-7);
        let hs = f.hessian(x, y);
        let hxy = (f.gradient(x, y + e)[0] - f.gradient(x, y - e)[0]) / (2.0 * e);
        let hyy = (f.gradient(x, y + e)[1] - f.gradient(x, y - e)[1]) / (2.0 * e);
        assert!((hs[1] - hxy).abs() < 1e-6 && (hs[2] - hyy).abs() < 1e-6);
    }
}
