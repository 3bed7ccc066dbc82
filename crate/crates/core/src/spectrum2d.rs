//! Two-dimensional Robin spectrum of the square.
//!
//! Eigenvalues are `λ_{p,q,h} = (α_p(h)² + α_q(h)²)/π²`, indexed by mode
//! labels `(p, q)`. Tables are sorted by value with ties broken
//! lexicographically on `(p, q)`; equal values form a cluster sharing the
//! 1-based index range `k_min..=k_max`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::robin1d::{AlphaSolver, RobinParam};
use crate::{Error, Result};

/// Relative tolerance below which two eigenvalues are one cluster.
pub const CLUSTER_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeLabel {
    pub p: u32,
    pub q: u32,
}

impl ModeLabel {
    pub const fn new(p: u32, q: u32) -> Self {
        ModeLabel { p, q }
    }

    /// `(min, max)` ordering of the two indices.
    pub fn canonical(self) -> Self {
        ModeLabel::new(self.p.min(self.q), self.p.max(self.q))
    }

    pub fn swapped(self) -> Self {
        ModeLabel::new(self.q, self.p)
    }

    /// `p² + q²`, the `h = 0` eigenvalue.
    pub fn neumann_value(self) -> u64 {
        let (p, q) = (self.p as u64, self.q as u64);
        p * p + q * q
    }

    /// `(p+1)² + (q+1)²`, the `h = ∞` eigenvalue.
    pub fn dirichlet_value(self) -> u64 {
        let (p, q) = (self.p as u64 + 1, self.q as u64 + 1);
        p * p + q * q
    }
}

impl std::fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl std::str::FromStr for ModeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut it = t.split(',').map(|v| v.trim().parse::<u32>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(p)), Some(Ok(q)), None) => Ok(ModeLabel::new(p, q)),
            _ => Err(Error::precondition(
                "mode label",
                format!("'p,q', got {s:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue2D {
    pub label: ModeLabel,
    pub h: RobinParam,
    pub value: f64,
}

/// `λ_{p,q,h}`; exact integers at `h = 0` and `h = ∞`.
pub fn eigenvalue(label: ModeLabel, h: RobinParam) -> Eigenvalue2D {
    eigenvalue_with(&AlphaSolver::default(), label, h)
}

pub fn eigenvalue_with(solver: &AlphaSolver, label: ModeLabel, h: RobinParam) -> Eigenvalue2D {
    let value = if h.is_neumann() {
        label.neumann_value() as f64
    } else if h.is_dirichlet() {
        label.dirichlet_value() as f64
    } else {
        let ap = solver.solve(label.p, h).alpha;
        let aq = solver.solve(label.q, h).alpha;
        (ap * ap + aq * aq) / (PI * PI)
    };
    Eigenvalue2D { label, h, value }
}

/// A run of equal eigenvalues in a [`SpectrumTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    /// Index of the first member in `entries`.
    pub start: usize,
    pub len: usize,
    pub k_min: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub h: RobinParam,
    pub lambda_max: f64,
    pub entries: Vec<Eigenvalue2D>,
    pub clusters: Vec<Cluster>,
    /// Cluster index of each entry.
    pub cluster_of: Vec<usize>,
}

/// Flat row view of a table entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub m: u32,
    pub n: u32,
    pub value: f64,
    pub k_min: usize,
    pub k_max: usize,
}

fn same_cluster(a: f64, b: f64) -> bool {
    (a - b).abs() <= CLUSTER_RTOL * a.abs().max(b.abs())
}

impl SpectrumTable {
    fn from_sorted(h: RobinParam, lambda_max: f64, entries: Vec<Eigenvalue2D>) -> Self {
        let mut clusters: Vec<Cluster> = Vec::new();
        let mut cluster_of = Vec::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            let joins = clusters
                .last()
                .is_some_and(|c| same_cluster(entries[c.start + c.len - 1].value, e.value));
            if joins {
                let c = clusters.last_mut().unwrap();
                c.len += 1;
                c.k_max += 1;
            } else {
                clusters.push(Cluster {
                    start: i,
                    len: 1,
                    k_min: i + 1,
                    k_max: i + 1,
                });
            }
            cluster_of.push(clusters.len() - 1);
        }
        SpectrumTable {
            h,
            lambda_max,
            entries,
            clusters,
            cluster_of,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(k_min, k_max)` of entry `i`.
    pub fn k_range(&self, i: usize) -> (usize, usize) {
        let c = &self.clusters[self.cluster_of[i]];
        (c.k_min, c.k_max)
    }

    /// Position of `label` in the table.
    pub fn position(&self, label: ModeLabel) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }

    /// Members of the cluster containing entry `i`.
    pub fn cluster_members(&self, i: usize) -> &[Eigenvalue2D] {
        let c = &self.clusters[self.cluster_of[i]];
        &self.entries[c.start..c.start + c.len]
    }

    /// Number of entries with value strictly below `lambda`. Only meaningful
    /// for `lambda <= lambda_max`.
    pub fn count_below(&self, lambda: f64) -> usize {
        self.entries.partition_point(|e| e.value < lambda)
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        (0..self.len())
            .map(|i| {
                let (k_min, k_max) = self.k_range(i);
                let e = &self.entries[i];
                SpectrumRow {
                    m: e.label.p,
                    n: e.label.q,
                    value: e.value,
                    k_min,
                    k_max,
                }
            })
            .collect()
    }
}

/// Every eigenvalue below `lambda_max`, sorted and labelled.
pub fn enumerate_spectrum(h: RobinParam, lambda_max: f64) -> Result<SpectrumTable> {
    enumerate_spectrum_with(&AlphaSolver::default(), Execution::default(), h, lambda_max)
}

pub fn enumerate_spectrum_with(
    solver: &AlphaSolver,
    exec: Execution,
    h: RobinParam,
    lambda_max: f64,
) -> Result<SpectrumTable> {
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::precondition(
            "enumerate_spectrum",
            format!("finite lambda_max > 0, got {lambda_max}"),
        ));
    }
    // λ_{p,q} >= p² + q², so p, q <= √λ_max suffices.
    let pmax = lambda_max.sqrt().floor() as u32;
    let alphas: Vec<f64> = exec.map_range(pmax as usize + 1, |p| solver.solve(p as u32, h).alpha);
    let mut entries = Vec::new();
    for p in 0..=pmax {
        for q in 0..=pmax {
            let label = ModeLabel::new(p, q);
            if label.neumann_value() as f64 > lambda_max {
                continue;
            }
            let value = if h.is_neumann() {
                label.neumann_value() as f64
            } else if h.is_dirichlet() {
                label.dirichlet_value() as f64
            } else {
                let (a, b) = (alphas[p as usize], alphas[q as usize]);
                (a * a + b * b) / (PI * PI)
            };
            if value < lambda_max {
                entries.push(Eigenvalue2D { label, h, value });
            }
        }
    }
    entries.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.label.cmp(&b.label)));
    Ok(SpectrumTable::from_sorted(h, lambda_max, entries))
}

/// `N(λ)`: number of eigenvalues strictly below `lambda`.
pub fn counting_function(h: RobinParam, lambda: f64) -> Result<usize> {
    if !(lambda > 0.0) {
        return Err(Error::precondition(
            "counting_function",
            format!("lambda > 0, got {lambda}"),
        ));
    }
    Ok(enumerate_spectrum(h, lambda)?.len())
}

/// Outcome of [`weyl_bounds_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylReport {
    pub lambda_max: f64,
    pub samples: usize,
    /// `(λ, N)` pairs violating `π/4 λ < N ≤ π/4 λ + 2⌊√λ⌋ + 1` at `h = 0`.
    pub neumann_violations: Vec<(f64, usize)>,
    /// `(λ, N)` pairs violating `N > π/4 λ - 2√λ + 1` at `h = ∞`.
    pub dirichlet_violations: Vec<(f64, usize)>,
}

impl WeylReport {
    pub fn holds(&self) -> bool {
        self.neumann_violations.is_empty() && self.dirichlet_violations.is_empty()
    }
}

pub fn neumann_weyl_holds(lambda: f64, n: usize) -> bool {
    let lead = PI / 4.0 * lambda;
    let n = n as f64;
    lead < n && n <= lead + 2.0 * lambda.sqrt().floor() + 1.0
}

pub fn dirichlet_weyl_holds(lambda: f64, n: usize) -> bool {
    n as f64 > PI / 4.0 * lambda - 2.0 * lambda.sqrt() + 1.0
}

/// Checks both Weyl-type chains on `samples` equispaced points of
/// `(2, lambda_max]`, plus a point just above every eigenvalue in range.
pub fn weyl_bounds_check(lambda_max: f64, samples: usize) -> Result<WeylReport> {
    if !(lambda_max >= 2.0) {
        return Err(Error::precondition(
            "weyl_bounds_check",
            format!("lambda_max >= 2, got {lambda_max}"),
        ));
    }
    let top = lambda_max * (1.0 + 1e-12) + 1e-9;
    let neu = enumerate_spectrum(RobinParam::NEUMANN, top)?;
    let dir = enumerate_spectrum(RobinParam::DIRICHLET, top)?;
    let mut points: Vec<f64> = (1..=samples)
        .map(|i| 2.0 + (lambda_max - 2.0) * i as f64 / samples as f64)
        .collect();
    for e in neu.entries.iter().chain(&dir.entries) {
        let l = e.value + 1e-9;
        if l > 2.0 && l <= lambda_max {
            points.push(l);
        }
    }
    let mut report = WeylReport {
        lambda_max,
        samples: points.len(),
        neumann_violations: Vec::new(),
        dirichlet_violations: Vec::new(),
    };
    for &l in &points {
        let n = neu.count_below(l);
        if !neumann_weyl_holds(l, n) {
            report.neumann_violations.push((l, n));
        }
        let d = dir.count_below(l);
        if !dirichlet_weyl_holds(l, d) {
            report.dirichlet_violations.push((l, d));
        }
    }
    Ok(report)
}

/// Index cutoff from the Weyl upper bound at an eigenvalue cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexCutoff {
    pub lambda_cap: f64,
    /// `π/4·cap + 2⌊√cap⌋ + 1`.
    pub bound: f64,
    /// Smallest index that cannot belong to an eigenvalue below the cap.
    pub cutoff: u64,
}

/// For `λ_n < cap`, `n - 1 = N(λ_n) ≤ bound`, so every `n ≥ ⌊bound⌋ + 2`
/// has `λ_n ≥ cap`.
pub fn index_cutoff(lambda_cap: f64) -> IndexCutoff {
    let bound = PI / 4.0 * lambda_cap + 2.0 * lambda_cap.sqrt().floor() + 1.0;
    IndexCutoff {
        lambda_cap,
        bound,
        cutoff: bound.floor() as u64 + 2,
    }
}

/// The cutoff at the Pleijel threshold `λ = 598`: indices `k ≥ 520` are
/// never Courant-sharp.
pub fn theorem_1_1_bound() -> IndexCutoff {
    index_cutoff(598.0)
}

/// One row of an integer eigenvalue table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableRow {
    pub m: u32,
    pub n: u32,
    pub value: u64,
    pub k_min: usize,
    pub k_max: usize,
}

/// Integer table of `m² + n²` over `m, n >= origin` for every cluster that
/// starts at index `<= kmax`.
pub fn integer_table(origin: u32, kmax: usize) -> Vec<TableRow> {
    let mut side = origin + 2;
    loop {
        // all values < (side - 1)² are complete once side² exceeds them
        let mut vals: Vec<(u64, u32, u32)> = Vec::new();
        for m in origin..side {
            for n in origin..side {
                vals.push(((m as u64).pow(2) + (n as u64).pow(2), m, n));
            }
        }
        vals.sort();
        let complete_below = (side as u64).pow(2);
        let mut rows = Vec::new();
        let mut i = 0;
        let mut done = false;
        while i < vals.len() && vals[i].0 < complete_below {
            let mut j = i;
            while j < vals.len() && vals[j].0 == vals[i].0 {
                j += 1;
            }
            if i + 1 > kmax {
                done = true;
                break;
            }
            for &(value, m, n) in &vals[i..j] {
                rows.push(TableRow {
                    m,
                    n,
                    value,
                    k_min: i + 1,
                    k_max: j,
                });
            }
            i = j;
        }
        if done {
            return rows;
        }
        side *= 2;
    }
}

/// Neumann table (`m, n >= 0`) and Dirichlet table (`m, n >= 1`) for every
/// cluster starting at `k <= 129`.
pub fn appendix_tables() -> (Vec<TableRow>, Vec<TableRow>) {
    (integer_table(0, 129), integer_table(1, 129))
}

/// Dirichlet-table labels of an `h = ∞` spectrum: `(p, q) → (p+1, q+1)`.
pub fn dirichlet_rows(table: &SpectrumTable) -> Vec<SpectrumRow> {
    table
        .rows()
        .into_iter()
        .map(|r| SpectrumRow {
            m: r.m + 1,
            n: r.n + 1,
            ..r
        })
        .collect()
}

/// Range of branch indices over an eigenvalue's cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SturmBounds {
    pub i: u32,
    pub j: u32,
}

/// `i_n` and `j_n`: the smallest and largest index occurring among the labels
/// of the cluster containing `entry`.
pub fn sturm_index_bounds(entry: &Eigenvalue2D, table: &SpectrumTable) -> Result<SturmBounds> {
    let pos = table
        .position(entry.label)
        .filter(|&i| table.entries[i].h == entry.h)
        .ok_or_else(|| {
            Error::precondition("sturm_index_bounds", format!("{} in table", entry.label))
        })?;
    let members = table.cluster_members(pos);
    let i = members
        .iter()
        .map(|e| e.label.p.min(e.label.q))
        .min()
        .unwrap();
    let j = members
        .iter()
        .map(|e| e.label.p.max(e.label.q))
        .max()
        .unwrap();
    Ok(SturmBounds { i, j })
}
