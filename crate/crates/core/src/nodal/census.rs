//! Grid-based nodal domain counting.
//!
//! The square is split into `R × R` coarse cells. A cell whose four corner
//! values share a strict sign is pure; the rest are mixed and refined into
//! `4 × 4` sub-cells judged the same way. Pure cells and pure sub-cells are
//! joined across shared edges when their signs agree. Mixed sub-cells are the
//! thickened nodal set and belong to no domain, and a component counts as a
//! nodal domain only if it holds at least one pure coarse cell.
//!
//! Pure coarse cells are stored as horizontal runs per row, so memory grows
//! with the length of the nodal set rather than with `R²`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::{boundary, critical, ThetaFamily};
use crate::exec::Execution;
use crate::{Error, Result};

/// Sub-cells per coarse cell edge.
const SUB: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusOptions {
    pub resolution: usize,
    /// Largest resolution the stability check may use.
    pub max_resolution: usize,
    pub exec: Execution,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            resolution: 1024,
            max_resolution: 16384,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodalCensus {
    pub domains: usize,
    /// Boundary points of the nodal set, sides plus corners.
    pub boundary_zeros: usize,
    pub interior_critical: usize,
    /// Coarse resolution at which the count agreed with twice that resolution.
    pub resolution: usize,
    /// The count only settled after doubling beyond the requested resolution.
    pub refined: bool,
    pub positive_domains: usize,
    pub negative_domains: usize,
    /// Domains reaching the boundary along an arc.
    pub outer_domains: usize,
    pub inner_domains: usize,
    /// Areas of the pure cells of each domain, descending.
    pub domain_areas: Vec<f64>,
    /// Connected components of the nodal set that avoid the boundary.
    pub closed_nodal_components: usize,
    /// `(resolution, domains)` for every grid evaluated.
    pub history: Vec<(usize, usize)>,
}

/// Result of a single grid evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPass {
    pub resolution: usize,
    pub domains: usize,
    pub positive: usize,
    pub outer: usize,
    pub areas: Vec<f64>,
    pub closed_nodal_components: usize,
}

#[derive(Debug, Clone, Copy)]
struct Run {
    c0: u32,
    c1: u32,
    sign: i8,
}

#[derive(Debug, Clone, Copy)]
struct Mixed {
    col: u32,
    /// Sub-cell signs, index `a * SUB + b` with `a` along `y` and `b` along `x`.
    sub: [i8; SUB * SUB],
}

#[derive(Debug, Default)]
struct Row {
    runs: Vec<Run>,
    mixed: Vec<Mixed>,
}

impl Row {
    fn elements(&self) -> usize {
        self.runs.len() + SUB * SUB * self.mixed.len()
    }

    fn run_at(&self, col: u32) -> Option<usize> {
        let k = self.runs.partition_point(|r| r.c1 < col);
        (k < self.runs.len() && self.runs[k].c0 <= col).then_some(k)
    }

    fn mixed_at(&self, col: u32) -> Option<usize> {
        self.mixed.binary_search_by_key(&col, |m| m.col).ok()
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn cell_sign(a: i8, b: i8, c: i8, d: i8) -> i8 {
    if a != 0 && a == b && a == c && a == d {
        a
    } else {
        0
    }
}

/// Factor tables on the fine lattice of `SUB·R + 1` points per axis.
struct Lattice {
    r: usize,
    c: f64,
    s: f64,
    fp: Vec<f64>,
    fq: Vec<f64>,
}

impl Lattice {
    fn new(family: &ThetaFamily, r: usize) -> Self {
        let n = SUB * r;
        let step = PI / n as f64;
        let mut fp = Vec::with_capacity(n + 1);
        let mut fq = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let x = if i == n {
                FRAC_PI_2
            } else {
                -FRAC_PI_2 + i as f64 * step
            };
            let (a, b) = family.factors_at(x);
            fp.push(a);
            fq.push(b);
        }
        let (c, s) = family.coefficients();
        Lattice { r, c, s, fp, fq }
    }

    /// Sign of `Φ` at fine node `(i, j)`, `i` along `x`.
    #[inline]
    fn sign(&self, i: usize, j: usize) -> i8 {
        sign(self.c * self.fp[i] * self.fq[j] + self.s * self.fp[j] * self.fq[i])
    }

    fn row(&self, r: usize) -> Row {
        let n = self.r;
        let (j0, j1) = (SUB * r, SUB * (r + 1));
        let bottom: Vec<i8> = (0..=n).map(|c| self.sign(SUB * c, j0)).collect();
        let top: Vec<i8> = (0..=n).map(|c| self.sign(SUB * c, j1)).collect();
        let mut row = Row::default();
        for c in 0..n {
            let s = cell_sign(bottom[c], bottom[c + 1], top[c], top[c + 1]);
            if s != 0 {
                match row.runs.last_mut() {
                    Some(run) if run.c1 + 1 == c as u32 && run.sign == s => run.c1 += 1,
                    _ => row.runs.push(Run {
                        c0: c as u32,
                        c1: c as u32,
                        sign: s,
                    }),
                }
                continue;
            }
            let mut nodes = [[0i8; SUB + 1]; SUB + 1];
            for (a, line) in nodes.iter_mut().enumerate() {
                for (b, v) in line.iter_mut().enumerate() {
                    *v = self.sign(SUB * c + b, j0 + a);
                }
            }
            let mut sub = [0i8; SUB * SUB];
            for a in 0..SUB {
                for b in 0..SUB {
                    sub[a * SUB + b] = cell_sign(
                        nodes[a][b],
                        nodes[a][b + 1],
                        nodes[a + 1][b],
                        nodes[a + 1][b + 1],
                    );
                }
            }
            row.mixed.push(Mixed { col: c as u32, sub });
        }
        row
    }
}

/// Union-find with path halving and union by size over a window of ids.
struct Dsu {
    base: usize,
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(base: usize, n: usize) -> Self {
        Dsu {
            base,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    /// Joins two global ids.
    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a - self.base), self.find(b - self.base));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
    }
}

fn link_sub(u: &mut impl FnMut(usize, usize), ia: usize, sa: i8, ib: usize, sb: i8) {
    if sa != 0 && sa == sb {
        u(ia, ib);
    }
}

/// Unions inside one row: sub-cells of each mixed cell, and mixed cells
/// with their left and right neighbours.
fn link_within(row: &Row, off: usize, u: &mut impl FnMut(usize, usize)) {
    let nr = row.runs.len();
    let sub_id = |j: usize, s: usize| off + nr + SUB * SUB * j + s;
    for (j, m) in row.mixed.iter().enumerate() {
        for a in 0..SUB {
            for b in 0..SUB {
                let s = a * SUB + b;
                if b + 1 < SUB {
                    link_sub(u, sub_id(j, s), m.sub[s], sub_id(j, s + 1), m.sub[s + 1]);
                }
                if a + 1 < SUB {
                    link_sub(
                        u,
                        sub_id(j, s),
                        m.sub[s],
                        sub_id(j, s + SUB),
                        m.sub[s + SUB],
                    );
                }
            }
        }
        if m.col > 0 {
            let left = m.col - 1;
            if j > 0 && row.mixed[j - 1].col == left {
                let lm = &row.mixed[j - 1];
                for a in 0..SUB {
                    let (sl, sr) = (a * SUB + SUB - 1, a * SUB);
                    link_sub(u, sub_id(j - 1, sl), lm.sub[sl], sub_id(j, sr), m.sub[sr]);
                }
            } else if let Some(k) = row.run_at(left) {
                for a in 0..SUB {
                    let s = a * SUB;
                    link_sub(u, off + k, row.runs[k].sign, sub_id(j, s), m.sub[s]);
                }
            }
        }
        let right = m.col + 1;
        let right_mixed = row.mixed.get(j + 1).is_some_and(|n| n.col == right);
        if !right_mixed {
            if let Some(k) = row.run_at(right) {
                for a in 0..SUB {
                    let s = a * SUB + SUB - 1;
                    link_sub(u, off + k, row.runs[k].sign, sub_id(j, s), m.sub[s]);
                }
            }
        }
    }
}

/// Unions between row `lo` and the row directly above it.
fn link_between(
    lo: &Row,
    lo_off: usize,
    hi: &Row,
    hi_off: usize,
    u: &mut impl FnMut(usize, usize),
) {
    let (mut i, mut k) = (0, 0);
    while i < lo.runs.len() && k < hi.runs.len() {
        let (a, b) = (lo.runs[i], hi.runs[k]);
        if a.c0 <= b.c1 && b.c0 <= a.c1 && a.sign == b.sign {
            u(lo_off + i, hi_off + k);
        }
        if a.c1 < b.c1 {
            i += 1;
        } else {
            k += 1;
        }
    }
    let lo_sub = |j: usize, s: usize| lo_off + lo.runs.len() + SUB * SUB * j + s;
    let hi_sub = |j: usize, s: usize| hi_off + hi.runs.len() + SUB * SUB * j + s;
    for (j, m) in hi.mixed.iter().enumerate() {
        if let Some(jl) = lo.mixed_at(m.col) {
            let ml = &lo.mixed[jl];
            for b in 0..SUB {
                let (sl, sh) = ((SUB - 1) * SUB + b, b);
                link_sub(u, lo_sub(jl, sl), ml.sub[sl], hi_sub(j, sh), m.sub[sh]);
            }
        } else if let Some(r) = lo.run_at(m.col) {
            for b in 0..SUB {
                link_sub(u, lo_off + r, lo.runs[r].sign, hi_sub(j, b), m.sub[b]);
            }
        }
    }
    for (j, m) in lo.mixed.iter().enumerate() {
        if hi.mixed_at(m.col).is_some() {
            continue;
        }
        if let Some(r) = hi.run_at(m.col) {
            for b in 0..SUB {
                let s = (SUB - 1) * SUB + b;
                link_sub(u, hi_off + r, hi.runs[r].sign, lo_sub(j, s), m.sub[s]);
            }
        }
    }
}

/// Counts components of the mixed sub-cells (8-connected) that stay away
/// from the boundary.
fn closed_nodal_components(rows: &[Row], offsets: &[usize], total: usize) -> usize {
    let r_n = rows.len();
    let n_fine = SUB * r_n;
    let mut dsu = Dsu::new(0, total);
    let id = |r: usize, j: usize, s: usize| offsets[r] + rows[r].runs.len() + SUB * SUB * j + s;
    let lookup = |r: isize, col: isize| -> Option<usize> {
        if r < 0 || col < 0 || r as usize >= r_n || col as usize >= r_n {
            return None;
        }
        rows[r as usize].mixed_at(col as u32)
    };
    let mut touches = vec![false; total];
    for (r, row) in rows.iter().enumerate() {
        for (j, m) in row.mixed.iter().enumerate() {
            for a in 0..SUB {
                for b in 0..SUB {
                    let s = a * SUB + b;
                    if m.sub[s] != 0 {
                        continue;
                    }
                    let (fy, fx) = (SUB * r + a, SUB * m.col as usize + b);
                    if fy == 0 || fx == 0 || fy + 1 == n_fine || fx + 1 == n_fine {
                        touches[id(r, j, s)] = true;
                    }
                    for (da, db) in [(0isize, 1isize), (1, -1), (1, 0), (1, 1)] {
                        let (ta, tb) = (a as isize + da, b as isize + db);
                        let (dr, dc) = (ta.div_euclid(SUB as isize), tb.div_euclid(SUB as isize));
                        let (sa, sb) = (
                            ta.rem_euclid(SUB as isize) as usize,
                            tb.rem_euclid(SUB as isize) as usize,
                        );
                        let (rr, cc) = (r as isize + dr, m.col as isize + dc);
                        if let Some(jj) = lookup(rr, cc) {
                            let t = sa * SUB + sb;
                            if rows[rr as usize].mixed[jj].sub[t] == 0 {
                                dsu.union(id(r, j, s), id(rr as usize, jj, t));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut root_touch = vec![0u8; total];
    for (r, row) in rows.iter().enumerate() {
        for (j, m) in row.mixed.iter().enumerate() {
            for s in 0..SUB * SUB {
                if m.sub[s] != 0 {
                    continue;
                }
                let e = id(r, j, s);
                let root = dsu.find(e);
                root_touch[root] |= 1;
                if touches[e] {
                    root_touch[root] |= 2;
                }
            }
        }
    }
    root_touch.iter().filter(|&&t| t == 1).count()
}

/// Evaluates the grid at one coarse resolution.
pub fn grid_pass(family: &ThetaFamily, resolution: usize, exec: Execution) -> GridPass {
    let lattice = Lattice::new(family, resolution);
    let rows: Vec<Row> = exec.map_range(resolution, |r| lattice.row(r));
    let mut offsets = Vec::with_capacity(rows.len() + 1);
    let mut total = 0;
    for row in &rows {
        offsets.push(total);
        total += row.elements();
    }
    offsets.push(total);

    let block_rows = 32usize;
    let blocks: Vec<(usize, usize)> = (0..resolution)
        .step_by(block_rows)
        .map(|r0| (r0, (r0 + block_rows).min(resolution)))
        .collect();
    let local_roots: Vec<Vec<u32>> = exec.map(&blocks, |&(r0, r1)| {
        let base = offsets[r0];
        let mut dsu = Dsu::new(base, offsets[r1] - base);
        let mut u = |a: usize, b: usize| dsu.union(a, b);
        for r in r0..r1 {
            link_within(&rows[r], offsets[r], &mut u);
            if r + 1 < r1 {
                link_between(&rows[r], offsets[r], &rows[r + 1], offsets[r + 1], &mut u);
            }
        }
        (0..dsu.parent.len())
            .map(|i| (dsu.find(i) + base) as u32)
            .collect()
    });
    let mut dsu = Dsu::new(0, total);
    dsu.parent = local_roots.into_iter().flatten().collect();
    for &(_, r1) in &blocks {
        if r1 < resolution {
            let mut u = |a: usize, b: usize| dsu.union(a, b);
            link_between(
                &rows[r1 - 1],
                offsets[r1 - 1],
                &rows[r1],
                offsets[r1],
                &mut u,
            );
        }
    }

    #[derive(Clone, Copy, Default)]
    struct Agg {
        coarse: bool,
        outer: bool,
        area: f64,
        sign: i8,
    }
    let cell = PI / resolution as f64;
    let cell_area = cell * cell;
    let sub_area = cell_area / (SUB * SUB) as f64;
    let near = |i: usize| i < 2 || i + 2 >= resolution;
    let mut agg = vec![Agg::default(); total];
    for (r, row) in rows.iter().enumerate() {
        for (k, run) in row.runs.iter().enumerate() {
            let root = dsu.find(offsets[r] + k);
            let a = &mut agg[root];
            a.coarse = true;
            a.sign = run.sign;
            a.area += (run.c1 - run.c0 + 1) as f64 * cell_area;
            a.outer |= near(r) || near(run.c0 as usize) || near(run.c1 as usize);
        }
        for (j, m) in row.mixed.iter().enumerate() {
            for (s, &sg) in m.sub.iter().enumerate() {
                if sg == 0 {
                    continue;
                }
                let root = dsu.find(offsets[r] + row.runs.len() + SUB * SUB * j + s);
                let a = &mut agg[root];
                a.area += sub_area;
                a.sign = sg;
                a.outer |= near(r) || near(m.col as usize);
            }
        }
    }
    let mut areas = Vec::new();
    let (mut positive, mut outer) = (0, 0);
    for a in agg.iter().filter(|a| a.coarse) {
        areas.push(a.area);
        positive += usize::from(a.sign > 0);
        outer += usize::from(a.outer);
    }
    areas.sort_by(|a, b| b.total_cmp(a));
    GridPass {
        resolution,
        domains: areas.len(),
        positive,
        outer,
        areas,
        closed_nodal_components: closed_nodal_components(&rows, &offsets, total),
    }
}

/// Doubles the resolution until two consecutive grids agree on the count.
/// Returns the coarser pass of the agreeing pair, the areas of the finer
/// one, and the history of counts.
pub fn stable_pass(
    family: &ThetaFamily,
    opts: &CensusOptions,
) -> Result<(GridPass, Vec<(usize, usize)>)> {
    if opts.resolution < 64 {
        return Err(Error::precondition(
            "count_nodal_domains",
            format!("resolution >= 64, got {}", opts.resolution),
        ));
    }
    let mut r = opts.resolution;
    let mut a = grid_pass(family, r, opts.exec);
    let mut history = vec![(r, a.domains)];
    loop {
        if 2 * r > opts.max_resolution {
            return Err(Error::Unstable { history });
        }
        let b = grid_pass(family, 2 * r, opts.exec);
        history.push((2 * r, b.domains));
        if a.domains == b.domains && a.closed_nodal_components == b.closed_nodal_components {
            a.areas = b.areas;
            return Ok((a, history));
        }
        a = b;
        r *= 2;
    }
}

/// Nodal domains, boundary points and interior critical points of `Φ`.
pub fn census_with(family: &ThetaFamily, opts: &CensusOptions) -> Result<NodalCensus> {
    let (pass, history) = stable_pass(family, opts)?;
    let boundary_zeros = boundary::census_boundary_points(family).len();
    let interior_critical = critical::interior_critical_points(family).len();
    Ok(NodalCensus {
        domains: pass.domains,
        boundary_zeros,
        interior_critical,
        resolution: pass.resolution,
        refined: pass.resolution > opts.resolution,
        positive_domains: pass.positive,
        negative_domains: pass.domains - pass.positive,
        outer_domains: pass.outer,
        inner_domains: pass.domains - pass.outer,
        domain_areas: pass.areas,
        closed_nodal_components: pass.closed_nodal_components,
        history,
    })
}

/// [`census_with`] at the given resolution and default options otherwise.
pub fn count_nodal_domains(family: &ThetaFamily, resolution: usize) -> Result<NodalCensus> {
    census_with(
        family,
        &CensusOptions {
            resolution,
            ..CensusOptions::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::robin1d::RobinParam;

    fn domains(h: RobinParam, theta: f64, p: u32, q: u32, r: usize) -> usize {
        let f = ThetaFamily::new(h, theta, p, q).unwrap();
        grid_pass(&f, r, Execution::Sequential).domains
    }

    #[test]
    fn product_modes() {
        for (p, q) in [(0, 0), (1, 0), (2, 1), (3, 3), (4, 2)] {
            for h in [
                RobinParam::NEUMANN,
                RobinParam::Finite(1.0),
                RobinParam::DIRICHLET,
            ] {
                let d = domains(h, 0.0, p, q, 128);
                assert_eq!(d, ((p + 1) * (q + 1)) as usize, "({p},{q}) at {h}");
            }
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let f = ThetaFamily::new(RobinParam::Finite(20.0), 0.9, 5, 1).unwrap();
        let a = grid_pass(&f, 256, Execution::Sequential);
        let b = grid_pass(&f, 256, Execution::Parallel);
        assert_eq!(a, b);
    }

    #[test]
    fn area_sums_to_square() {
        let f = ThetaFamily::single(RobinParam::Finite(1.0), 2, 1).unwrap();
        let p = grid_pass(&f, 512, Execution::default());
        let total: f64 = p.areas.iter().sum();
        assert!(total < PI * PI && total > 0.98 * PI * PI);
        assert_eq!(p.outer, 6);
        assert_eq!(p.closed_nodal_components, 0);
    }

    #[test]
    fn closed_loop_is_detected() {
        let f = ThetaFamily::new(RobinParam::DIRICHLET, 0.0, 0, 0).unwrap();
        let p = grid_pass(&f, 128, Execution::Sequential);
        assert_eq!(p.closed_nodal_components, 0);
        let g = ThetaFamily::new(RobinParam::DIRICHLET, PI / 4.0, 2, 0).unwrap();
        let q = grid_pass(&g, 256, Execution::Sequential);
        assert_eq!(q.domains, 2);
        assert_eq!(q.closed_nodal_components, 1);
    }

    #[test]
    fn rejects_tiny_resolution() {
        let f = ThetaFamily::single(RobinParam::Finite(1.0), 0, 0).unwrap();
        assert!(count_nodal_domains(&f, 32).is_err());
    }
}
