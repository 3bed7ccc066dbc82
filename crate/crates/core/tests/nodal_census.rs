use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use robin_square::nodal::{
    census_sweep_5, census_with, critical_angles_25, euler_count_check, sweep_thetas_5,
    CensusOptions, ThetaFamily,
};
use robin_square::robin1d::RobinParam;

fn opts() -> CensusOptions {
    CensusOptions::default()
}

#[test]
fn fifth_eigenvalue_pattern() {
    for h in [
        RobinParam::Finite(20.0),
        RobinParam::Finite(100.0),
        RobinParam::DIRICHLET,
    ] {
        let thetas = sweep_thetas_5(h);
        let counts: Vec<usize> = census_sweep_5(h, &thetas, &opts())
            .unwrap()
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        assert_eq!(counts, vec![3, 2, 3, 4, 3], "h = {h}");
    }
}

#[test]
fn sweep_rejects_small_h() {
    assert!(census_sweep_5(RobinParam::Finite(5.0), &[0.1], &opts()).is_err());
}

#[test]
fn transition_table_at_twenty() {
    let h = RobinParam::Finite(20.0);
    let a = critical_angles_25(h).unwrap();
    let (tm, tt) = (a.theta_m, a.theta_t);
    let rows = [
        (0.0, (12, 12, 5)),
        (FRAC_PI_2 - tt, (12, 12, 3)),
        (0.5 * (FRAC_PI_2 - tt + tm), (8, 12, 1)),
        (tm, (8, 8, 1)),
        (FRAC_PI_4, (8, 4, 1)),
        (FRAC_PI_2 - tm, (8, 8, 1)),
        (0.5 * (FRAC_PI_2 - tm + tt), (8, 12, 1)),
        (tt, (12, 12, 3)),
        (FRAC_PI_2, (12, 12, 5)),
        (5.0 * PI / 8.0, (12, 12, 5)),
        (3.0 * FRAC_PI_4, (16, 16, 5)),
        (13.0 * PI / 16.0, (12, 12, 5)),
    ];
    for (theta, want) in rows {
        let f = ThetaFamily::new(h, theta, 5, 1).unwrap();
        let c = census_with(&f, &opts()).unwrap();
        let got = (c.domains, c.boundary_zeros, c.interior_critical);
        assert_eq!(got, want, "theta = {theta}");
        let e = euler_count_check(&f, &c);
        assert!(e.matches, "euler at theta = {theta}: {e:?}");
        assert_eq!(c.domains % 2, 0);
    }
}

#[test]
fn product_mode_two_two() {
    for h in [0.5, 1.5] {
        let f = ThetaFamily::single(RobinParam::Finite(h), 2, 2).unwrap();
        let c = census_with(&f, &opts()).unwrap();
        assert_eq!(c.domains, 9);
        assert_eq!(c.inner_domains, 1);
        assert!(euler_count_check(&f, &c).matches);
    }
}
