//! Robin ground state of the unit-area disc and the Pleijel-type exclusion
//! inequalities built on it.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::robin1d::RobinParam;
use crate::roots::bisect_newton;
use crate::spectrum2d::enumerate_spectrum;
use crate::{Error, Result};

pub mod bessel {
    //! `J₀` and `J₁` for `x >= 0`: power series up to 8, Miller backward
    //! recurrence up to 25, Hankel asymptotic expansion beyond.

    use std::f64::consts::PI;

    fn series(order: u32, x: f64) -> f64 {
        let y = 0.25 * x * x;
        let mut term = if order == 0 { 1.0 } else { 0.5 * x };
        let mut sum = term;
        let mut k = 1.0;
        while term.abs() > 1e-17 * sum.abs().max(1e-300) {
            term *= -y / (k * (k + order as f64));
            sum += term;
            k += 1.0;
        }
        sum
    }

    fn miller(x: f64) -> (f64, f64) {
        let top = 2 * ((x as usize + 40) / 2);
        let (mut next, mut cur) = (0.0f64, 1e-30f64);
        let mut norm = 2.0 * cur;
        let mut j1 = 0.0;
        for n in (1..=top).rev() {
            let prev = 2.0 * n as f64 / x * cur - next;
            next = cur;
            cur = prev;
            let m = n - 1;
            if m == 1 {
                j1 = cur;
            }
            norm += match m {
                0 => cur,
                m if m % 2 == 0 => 2.0 * cur,
                _ => 0.0,
            };
            if cur.abs() > 1e250 {
                for v in [&mut next, &mut cur, &mut norm, &mut j1] {
                    *v *= 1e-250;
                }
            }
        }
        // 1 = J₀ + 2 Σ J_{2k}
        (cur / norm, j1 / norm)
    }

    fn hankel(order: u32, x: f64) -> f64 {
        let mu = 4.0 * (order * order) as f64;
        let z = 8.0 * x;
        let (mut p, mut q) = (1.0, 0.0);
        let mut term = 1.0;
        let mut prev = f64::INFINITY;
        for k in 1..200u32 {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (k as f64 * z);
            if term.abs() > prev || term.abs() < 1e-17 {
                break;
            }
            prev = term.abs();
            match k % 4 {
                1 => q += term,
                2 => p -= term,
                3 => q -= term,
                _ => p += term,
            }
        }
        let w = x - (0.5 * order as f64 + 0.25) * PI;
        (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
    }

    fn pair(x: f64) -> (f64, f64) {
        let x = x.abs();
        if x <= 8.0 {
            (series(0, x), series(1, x))
        } else if x <= 25.0 {
            miller(x)
        } else {
            (hankel(0, x), hankel(1, x))
        }
    }

    pub fn j0(x: f64) -> f64 {
        pair(x).0
    }

    /// `J₁(x)` for `x >= 0`.
    pub fn j1(x: f64) -> f64 {
        pair(x).1
    }

    /// `J₀'(x) = -J₁(x)`.
    pub fn j0_prime(x: f64) -> f64 {
        -j1(x)
    }

    /// `J₀''(x) = -J₀(x) + J₁(x)/x`, with the limit `-1/2` at 0.
    pub fn j0_second(x: f64) -> f64 {
        if x == 0.0 {
            return -0.5;
        }
        let (a, b) = pair(x);
        -a + b / x
    }
}

/// First positive zero of `J₀`.
pub fn j0_first_zero() -> f64 {
    static J: OnceLock<f64> = OnceLock::new();
    *J.get_or_init(|| bisect_newton(bessel::j0, bessel::j0_prime, 2.0, 3.0, 1e-6, 1e-16))
}

/// `π / j²`, the Faber–Krahn constant of the Pleijel argument.
pub fn pleijel_constant() -> f64 {
    let j = j0_first_zero();
    PI / (j * j)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscGroundState {
    pub h_tilde: RobinParam,
    pub lambda1: f64,
    /// Root `α` of `α√π J₀'(α) + h̃ J₀(α) = 0`; `lambda1 = π α²`.
    pub alpha_root: f64,
}

/// First Robin eigenvalue of the disc of area 1.
pub fn disc_ground_state(h_tilde: RobinParam) -> DiscGroundState {
    let j = j0_first_zero();
    let alpha = match h_tilde {
        RobinParam::Dirichlet => j,
        RobinParam::Finite(0.0) => 0.0,
        RobinParam::Finite(h) => {
            let sp = PI.sqrt();
            let f = |a: f64| -a * sp * bessel::j1(a) + h * bessel::j0(a);
            let df = |a: f64| -sp * a * bessel::j0(a) - h * bessel::j1(a);
            bisect_newton(f, df, 1e-8, j, 1e-10, 1e-16 * h.max(1.0))
        }
    };
    DiscGroundState {
        h_tilde,
        lambda1: PI * alpha * alpha,
        alpha_root: alpha,
    }
}

/// `λ_{1,h}(D_ω) = λ_{1, h√A}(D₁)/A` for a disc of area `A`.
pub fn scaled_fk_bound(h: RobinParam, area: f64) -> Result<f64> {
    if !(area > 0.0) {
        return Err(Error::precondition(
            "scaled_fk_bound",
            format!("area > 0, got {area}"),
        ));
    }
    let scaled = match h {
        RobinParam::Dirichlet => RobinParam::Dirichlet,
        RobinParam::Finite(v) => RobinParam::Finite(v * area.sqrt()),
    };
    Ok(disc_ground_state(scaled).lambda1 / area)
}

/// `f(λ) = 2/λ - 6/√λ + π/4 - π/j²`; positive from `λ = 598` on.
pub fn pleijel_f(lambda: f64) -> f64 {
    2.0 / lambda - 6.0 / lambda.sqrt() + PI / 4.0 - pleijel_constant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Excluded,
    Possible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PleijelCheck {
    pub n: u64,
    pub lambda: f64,
    /// `(n - 4√λ)/λ`.
    pub lhs: f64,
    pub f: f64,
    pub verdict: Verdict,
}

/// A Courant-sharp `λ_n` needs `π/j² > (n - 4√λ)/λ`; for `λ >= 598` the
/// Weyl bound forces the opposite, which shows up as `f(λ) > 0`.
pub fn pleijel_exclusion(n: u64, lambda: f64) -> Result<PleijelCheck> {
    if !(lambda >= 2.0) {
        return Err(Error::precondition(
            "pleijel_exclusion",
            format!("lambda >= 2, got {lambda}"),
        ));
    }
    let lhs = (n as f64 - 4.0 * lambda.sqrt()) / lambda;
    let f = pleijel_f(lambda);
    let verdict = if lhs >= pleijel_constant() || f > 0.0 {
        Verdict::Excluded
    } else {
        Verdict::Possible
    };
    Ok(PleijelCheck {
        n,
        lambda,
        lhs,
        f,
        verdict,
    })
}

/// Indices of Dirichlet eigenvalues `λ_n <= 50` passing both the quotient
/// test `n/λ_n < 0.54323` and `n > π/4 λ_n - 2√λ_n + 2`.
pub fn dirichlet_candidates() -> Vec<usize> {
    let table = enumerate_spectrum(RobinParam::DIRICHLET, 50.5).expect("positive cap");
    table
        .entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| {
            let n = i + 1;
            let lam = e.value;
            let quotient = (n as f64) / lam < 0.54323;
            let weyl = n as f64 > PI / 4.0 * lam - 2.0 * lam.sqrt() + 2.0;
            (lam <= 50.0 && quotient && weyl).then_some(n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::bessel::*;
    use super::*;

    fn quad(order: f64, x: f64) -> f64 {
        let m = 400;
        let mut s = 0.0;
        for i in 0..m {
            let t = 2.0 * PI * i as f64 / m as f64;
            s += (order * t - x * t.sin()).cos();
        }
        s / m as f64
    }

    #[test]
    fn bessel_against_quadrature() {
        let mut x = 0.0;
        while x <= 40.0 {
            assert!((j0(x) - quad(0.0, x)).abs() < 1e-12, "J0({x})");
            assert!((j1(x) - quad(1.0, x)).abs() < 1e-12, "J1({x})");
            x += 0.0625 * 1.37;
        }
    }

    #[test]
    fn bessel_at_origin() {
        assert_eq!(j0(0.0), 1.0);
        assert_eq!(j0_prime(0.0), 0.0);
        assert_eq!(j0_second(0.0), -0.5);
        assert!((j0_second(1e-3) + 0.5).abs() < 1e-6);
    }

    #[test]
    fn first_zero() {
        let j = j0_first_zero();
        assert!((j - 2.404_825_557_695_773).abs() < 1e-14);
        assert!(j0(j).abs() < 1e-15);
        assert!((pleijel_constant() - 0.543229).abs() < 1e-6);
    }

    #[test]
    fn disc_limits() {
        let j = j0_first_zero();
        let d = disc_ground_state(RobinParam::DIRICHLET);
        assert_eq!(d.lambda1, PI * j * j);
        assert_eq!(disc_ground_state(RobinParam::NEUMANN).lambda1, 0.0);
        let mut prev = 0.0;
        for &h in &[1e-3, 0.1, 1.0, 10.0, 1e3] {
            let l = disc_ground_state(RobinParam::Finite(h)).lambda1;
            assert!(l > prev && l < PI * j * j);
            prev = l;
        }
    }

    #[test]
    fn small_h_slope_is_perimeter_over_area() {
        // λ₁ ≈ h |∂D|/|D| for small h; the unit-area disc has |∂D| = 2√π.
        let h = 1e-6;
        let l = disc_ground_state(RobinParam::Finite(h)).lambda1;
        assert!((l / h / (2.0 * PI.sqrt()) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn large_h_defect() {
        let j = j0_first_zero();
        let h = 1e4;
        let l = disc_ground_state(RobinParam::Finite(h)).lambda1;
        let c = 2.0 * PI.powf(1.5) * j * j;
        assert!(((PI * j * j - l) * h / c - 1.0).abs() < 1e-2);
    }

    #[test]
    fn scaling() {
        let h = RobinParam::Finite(0.7);
        let a = scaled_fk_bound(h, 4.0).unwrap();
        let b = disc_ground_state(RobinParam::Finite(1.4)).lambda1 / 4.0;
        assert_eq!(a, b);
        assert!(scaled_fk_bound(h, 0.0).is_err());
    }

    #[test]
    fn pleijel_threshold() {
        assert!(pleijel_f(597.0) < 0.0);
        assert!(pleijel_f(598.0) > 0.0);
        assert_eq!(
            pleijel_exclusion(900, 1000.0).unwrap().verdict,
            Verdict::Excluded
        );
        assert_eq!(
            pleijel_exclusion(10, 100.0).unwrap().verdict,
            Verdict::Possible
        );
    }

    #[test]
    fn candidates() {
        assert_eq!(dirichlet_candidates(), vec![1, 2, 4, 5, 7, 9]);
    }
}
