//! Parallel against sequential execution of the data-parallel kernels.
//! Without the `parallel` feature both variants run on one thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use robin_square::crossings::Curves;
use robin_square::nodal::census::grid_pass;
use robin_square::nodal::{census_with, CensusOptions, ThetaFamily};
use robin_square::robin1d::{AlphaSolver, RobinParam};
use robin_square::spectrum2d::{enumerate_spectrum_with, ModeLabel};
use robin_square::Execution;

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn family() -> ThetaFamily {
    ThetaFamily::new(RobinParam::Finite(20.0), std::f64::consts::FRAC_PI_4, 5, 1).unwrap()
}

fn grid(c: &mut Criterion) {
    let f = family();
    let mut g = c.benchmark_group("grid_pass");
    g.sample_size(10);
    for res in [512usize, 1024] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, res), &res, |b, &r| {
                b.iter(|| grid_pass(black_box(&f), r, exec))
            });
        }
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let f = family();
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = CensusOptions {
            exec,
            ..CensusOptions::default()
        };
        g.bench_function(name, |b| {
            b.iter(|| census_with(black_box(&f), &opts).unwrap())
        });
    }
    g.finish();
}

fn crossings(c: &mut Criterion) {
    let labels: Vec<ModeLabel> = [(2, 2), (3, 0), (3, 1), (4, 0), (4, 1), (3, 2)]
        .iter()
        .map(|&(p, q)| ModeLabel::new(p, q))
        .collect();
    let mut g = c.benchmark_group("multi_crossing_scan");
    g.sample_size(10);
    for (name, exec) in MODES {
        let curves = Curves::new(AlphaSolver::default(), exec);
        g.bench_function(name, |b| {
            b.iter(|| {
                curves
                    .multi_crossing_scan(black_box(&labels), 1e-3, 1e3)
                    .unwrap()
            })
        });
    }
    g.finish();
}

fn spectrum(c: &mut Criterion) {
    let solver = AlphaSolver::default();
    let mut g = c.benchmark_group("enumerate_spectrum");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                enumerate_spectrum_with(&solver, exec, RobinParam::Finite(1.0), black_box(2000.0))
                    .unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, grid, census, crossings, spectrum);
criterion_main!(benches);
