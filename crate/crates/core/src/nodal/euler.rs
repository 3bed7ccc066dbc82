//! Euler-type count of nodal domains from the nodal graph.
//!
//! `k = 1 + b₁ - b₀ + Σ (ν(x)/2 - 1) + ½ Σ ρ(y)`, summed over interior
//! crossings `x` of valence `ν` and boundary points `y` with `ρ` arcs. Here
//! `b₀ = 1` counts the boundary components of the square and `b₁` the
//! components of the nodal set together with the boundary.

use serde::Serialize;

use super::boundary::{census_boundary_points, BoundaryZero};
use super::census::NodalCensus;
use super::critical::{interior_critical_points, CriticalPoint};
use super::ThetaFamily;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerReport {
    pub b0: usize,
    pub b1: usize,
    pub interior: Vec<CriticalPoint>,
    pub boundary: Vec<BoundaryZero>,
    pub predicted: i64,
    pub census_domains: usize,
    pub matches: bool,
    /// Set when a valence or arc count is odd, which means the probing
    /// circles missed part of the nodal structure.
    pub under_resolved: bool,
}

pub fn euler_count_check(family: &ThetaFamily, census: &NodalCensus) -> EulerReport {
    let interior = interior_critical_points(family);
    let boundary = census_boundary_points(family);
    let b0 = 1;
    let b1 = 1 + census.closed_nodal_components;
    let twice = 2 * (1 + b1 as i64 - b0 as i64)
        + interior.iter().map(|c| c.valence as i64 - 2).sum::<i64>()
        + boundary.iter().map(|z| z.arcs as i64).sum::<i64>();
    let under_resolved = twice % 2 != 0 || interior.iter().any(|c| c.valence % 2 != 0);
    let predicted = twice.div_euclid(2);
    EulerReport {
        b0,
        b1,
        interior,
        boundary,
        predicted,
        census_domains: census.domains,
        matches: !under_resolved && predicted == census.domains as i64,
        under_resolved,
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::nodal::count_nodal_domains;
    use crate::robin1d::RobinParam;

    fn check(h: RobinParam, theta: f64, p: u32, q: u32) -> EulerReport {
        let f = ThetaFamily::new(h, theta, p, q).unwrap();
        let c = count_nodal_domains(&f, 256).unwrap();
        euler_count_check(&f, &c)
    }

    #[test]
    fn diagonal_cross() {
        let r = check(RobinParam::DIRICHLET, 3.0 * PI / 4.0, 0, 2);
        assert_eq!((r.b1, r.interior.len(), r.boundary.len()), (1, 1, 4));
        assert_eq!(r.predicted, 4);
        assert!(r.matches);
    }

    #[test]
    fn constant_sign() {
        let r = check(RobinParam::Finite(1.0), 0.0, 0, 0);
        assert_eq!(r.predicted, 1);
        assert!(r.matches);
    }

    #[test]
    fn closed_loop() {
        let r = check(RobinParam::DIRICHLET, PI / 4.0, 2, 0);
        assert_eq!(r.b1, 2);
        assert_eq!(r.predicted, 2);
        assert!(r.matches);
    }

    #[test]
    fn product_grid() {
        let r = check(RobinParam::Finite(1.0), 0.0, 2, 2);
        assert_eq!(r.predicted, 9);
        assert!(r.matches);
    }
}
