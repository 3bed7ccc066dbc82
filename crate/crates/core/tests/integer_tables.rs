use robin_square::robin1d::RobinParam;
use robin_square::spectrum2d::{appendix_tables, dirichlet_rows, enumerate_spectrum, TableRow};

fn fixture(text: &str) -> Vec<TableRow> {
    let mut r = csv_rows(text);
    r.sort_by_key(|t| (t.value, t.m, t.n));
    r
}

fn csv_rows(text: &str) -> Vec<TableRow> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<u64> = l.split(',').map(|v| v.parse().unwrap()).collect();
            TableRow {
                m: f[0] as u32,
                n: f[1] as u32,
                value: f[2],
                k_min: f[3] as usize,
                k_max: f[4] as usize,
            }
        })
        .collect()
}

fn sorted(mut v: Vec<TableRow>) -> Vec<TableRow> {
    v.sort_by_key(|t| (t.value, t.m, t.n));
    v
}

#[test]
fn tables_match_fixtures() {
    let (neu, dir) = appendix_tables();
    assert_eq!(sorted(neu), fixture(include_str!("data/neumann.csv")));
    assert_eq!(sorted(dir), fixture(include_str!("data/dirichlet.csv")));
}

#[test]
fn fixtures_end_at_index_129() {
    for t in [
        include_str!("data/neumann.csv"),
        include_str!("data/dirichlet.csv"),
    ] {
        let rows = csv_rows(t);
        assert_eq!(rows.len(), 129);
        assert_eq!(rows.iter().map(|r| r.k_max).max(), Some(129));
    }
}

#[test]
fn endpoint_spectra_reproduce_the_tables() {
    let (neu, dir) = appendix_tables();
    for (h, table) in [(RobinParam::NEUMANN, neu), (RobinParam::DIRICHLET, dir)] {
        let cap = table.iter().map(|r| r.value).max().unwrap() as f64 + 0.5;
        let computed = enumerate_spectrum(h, cap).unwrap();
        let rows = if h.is_dirichlet() {
            dirichlet_rows(&computed)
        } else {
            computed.rows()
        };
        let got: Vec<TableRow> = rows
            .iter()
            .filter(|r| r.k_min <= 129)
            .map(|r| TableRow {
                m: r.m,
                n: r.n,
                value: r.value.round() as u64,
                k_min: r.k_min,
                k_max: r.k_max,
            })
            .collect();
        assert_eq!(sorted(got), sorted(table));
    }
}
