use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use robin_square::crossings::Curves;
use robin_square::nodal::census::grid_pass;
use robin_square::nodal::ThetaFamily;
use robin_square::robin1d::{alpha_derivative, eval_u1d, solve_alpha, RobinParam};
use robin_square::spectrum2d::{
    counting_function, dirichlet_weyl_holds, eigenvalue, neumann_weyl_holds, ModeLabel,
};
use robin_square::Execution;

fn h_any() -> impl Strategy<Value = f64> {
    prop_oneof![0.0..1.0, 1.0..50.0, 50.0..1e5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn alpha_stays_in_its_band_and_increases(p in 0u32..40, h in h_any(), dh in 1e-6..10.0f64) {
        let a = solve_alpha(p, RobinParam::Finite(h));
        let b = solve_alpha(p, RobinParam::Finite(h + dh));
        let lo = p as f64 * PI;
        prop_assert!(a.alpha >= lo && a.alpha < lo + PI);
        prop_assert!(b.alpha >= a.alpha);
        prop_assert!(a.residual() < 1e-12, "residual {}", a.residual());
    }

    #[test]
    fn eigenfunctions_have_the_index_parity(p in 0u32..12, h in 1e-3..1e3f64, x in 0.0..FRAC_PI_2) {
        let s = solve_alpha(p, RobinParam::Finite(h));
        let (u, v) = (eval_u1d(&s, x).unwrap(), eval_u1d(&s, -x).unwrap());
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((v - sign * u).abs() <= 1e-12 * (1.0 + u.abs()));
    }

    #[test]
    fn derivative_matches_central_difference(p in 0u32..10, h in 1e-2..1e3f64) {
        let d = alpha_derivative(p, RobinParam::Finite(h)).unwrap();
        let step = 1e-4 * h;
        let fd = (solve_alpha(p, RobinParam::Finite(h + step)).alpha
            - solve_alpha(p, RobinParam::Finite(h - step)).alpha)
            / (2.0 * step);
        prop_assert!((d - fd).abs() <= 1e-6 * d.abs().max(1e-8), "{d} vs {fd}");
        prop_assert!(d > 0.0);
    }

    #[test]
    fn curve_slope_matches_central_difference(p in 0u32..6, q in 0u32..6, h in 1e-2..100.0f64) {
        let c = Curves::default();
        let l = ModeLabel::new(p, q);
        let step = 1e-4 * h;
        let fd = (c.lambda(l, RobinParam::Finite(h + step)) - c.lambda(l, RobinParam::Finite(h - step))) / (2.0 * step);
        let d = c.lambda_prime(l, h).unwrap();
        prop_assert!((d - fd).abs() <= 1e-6 * d.abs().max(1e-8), "{d} vs {fd}");
    }

    #[test]
    fn eigenvalue_is_symmetric_in_the_label(p in 0u32..20, q in 0u32..20, h in h_any()) {
        let h = RobinParam::Finite(h);
        prop_assert_eq!(eigenvalue(ModeLabel::new(p, q), h).value, eigenvalue(ModeLabel::new(q, p), h).value);
    }

    #[test]
    fn threshold_grows_with_level(p in 0u32..5, q in 0u32..5, t1 in 0.01..0.99f64, t2 in 0.01..0.99f64) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        let l = ModeLabel::new(p, q);
        let (lo, hi) = (l.neumann_value() as f64, l.dirichlet_value() as f64);
        let c = Curves::default();
        let (a, b) = (t1.min(t2), t1.max(t2));
        let ha = c.threshold_h(l, lo + a * (hi - lo)).unwrap();
        let hb = c.threshold_h(l, lo + b * (hi - lo)).unwrap();
        prop_assert!(ha < hb);
        let back = c.lambda(l, RobinParam::Finite(ha));
        prop_assert!((back - (lo + a * (hi - lo))).abs() < 1e-9 * hi);
    }

    #[test]
    fn phi_swaps_with_the_complementary_angle(
        p in 0u32..5, q in 0u32..5, h in 0.1..50.0f64, theta in 0.0..PI,
        x in -FRAC_PI_2..FRAC_PI_2, y in -FRAC_PI_2..FRAC_PI_2,
    ) {
        let h = RobinParam::Finite(h);
        let a = ThetaFamily::new(h, theta, p, q).unwrap();
        let b = ThetaFamily::new(h, FRAC_PI_2 - theta, p, q).unwrap();
        prop_assert!((a.phi(y, x) - b.phi(x, y)).abs() <= 1e-12 * a.scale().max(b.scale()));
    }

    #[test]
    fn phi_has_the_total_parity(
        p in 0u32..6, q in 0u32..6, h in 0.1..50.0f64, theta in 0.0..PI,
        x in -FRAC_PI_2..FRAC_PI_2, y in -FRAC_PI_2..FRAC_PI_2,
    ) {
        let f = ThetaFamily::new(RobinParam::Finite(h), theta, p, q).unwrap();
        let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((f.phi(-x, -y) - sign * f.phi(x, y)).abs() <= 1e-12 * f.scale());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weyl_chains_hold(lambda in 2.0..400.0f64) {
        let n0 = counting_function(RobinParam::NEUMANN, lambda).unwrap();
        let ninf = counting_function(RobinParam::DIRICHLET, lambda).unwrap();
        prop_assert!(neumann_weyl_holds(lambda, n0), "N(0, {lambda}) = {n0}");
        prop_assert!(dirichlet_weyl_holds(lambda, ninf), "N(inf, {lambda}) = {ninf}");
    }

    #[test]
    fn counting_function_decreases_in_h(lambda in 2.0..300.0f64, h1 in 0.0..20.0f64, h2 in 0.0..20.0f64) {
        let (a, b) = (h1.min(h2), h1.max(h2));
        let na = counting_function(RobinParam::Finite(a), lambda).unwrap();
        let nb = counting_function(RobinParam::Finite(b), lambda).unwrap();
        prop_assert!(nb <= na);
    }

    #[test]
    fn domain_count_respects_the_swap(p in 0u32..4, q in 0u32..4, h in 0.1..30.0f64, theta in 0.0..PI) {
        let h = RobinParam::Finite(h);
        let a = grid_pass(&ThetaFamily::new(h, theta, p, q).unwrap(), 256, Execution::default());
        let b = grid_pass(&ThetaFamily::new(h, FRAC_PI_2 - theta, p, q).unwrap(), 256, Execution::default());
        prop_assert_eq!(a.domains, b.domains);
        let c = grid_pass(&ThetaFamily::new(h, theta, p, q).unwrap(), 256, Execution::Sequential);
        prop_assert_eq!(a, c);
    }
}
