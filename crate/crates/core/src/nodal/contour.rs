//! Zero-level polylines of `Φ` by marching squares, for plotting.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};

use super::ThetaFamily;
use crate::{Error, Result};

/// Edge of the sampling lattice: `(i, j, vertical)` starting at node `(i, j)`.
type EdgeId = (u32, u32, bool);

/// Nodal lines of `Φ` as polylines, sampled on `n × n` cell centres.
/// Closed curves repeat their first point at the end.
pub fn nodal_polylines(family: &ThetaFamily, n: usize) -> Result<Vec<Vec<(f64, f64)>>> {
    if n < 2 {
        return Err(Error::precondition(
            "nodal_polylines",
            format!("n >= 2, got {n}"),
        ));
    }
    let step = PI / n as f64;
    let coord = |i: usize| -FRAC_PI_2 + (i as f64 + 0.5) * step;
    let v: Vec<f64> = (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .map(|(i, j)| family.phi(coord(i), coord(j)))
        .collect();
    let at = |i: usize, j: usize| v[j * n + i];
    let point = |e: EdgeId| -> (f64, f64) {
        let (i, j, vert) = (e.0 as usize, e.1 as usize, e.2);
        let (a, b) = if vert {
            (at(i, j), at(i, j + 1))
        } else {
            (at(i, j), at(i + 1, j))
        };
        let t = if a == b {
            0.5
        } else {
            (a / (a - b)).clamp(0.0, 1.0)
        };
        if vert {
            (coord(i), coord(j) + t * step)
        } else {
            (coord(i) + t * step, coord(j))
        }
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for j in 0..n - 1 {
        for i in 0..n - 1 {
            let corner = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            let code = corner
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &c)| acc | (u8::from(c > 0.0) << k));
            let (iu, ju) = (i as u32, j as u32);
            let bottom = (iu, ju, false);
            let right = (iu + 1, ju, true);
            let top = (iu, ju + 1, false);
            let left = (iu, ju, true);
            let centre_pos = corner.iter().sum::<f64>() > 0.0;
            match code {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((left, top)),
                5 => {
                    if centre_pos {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                10 => {
                    if centre_pos {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    } else {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let mut ends: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        ends.entry(a).or_default().push(k);
        ends.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    // open chains start at edges touched once, then whatever is left is closed
    let mut starts: Vec<EdgeId> = ends
        .iter()
        .filter(|(_, s)| s.len() == 1)
        .map(|(&e, _)| e)
        .collect();
    starts.sort_unstable();
    let closed_starts: Vec<EdgeId> = segments.iter().map(|s| s.0).collect();
    for start in starts.into_iter().chain(closed_starts) {
        let mut cur = start;
        let mut chain = vec![cur];
        while let Some(&k) = ends[&cur].iter().find(|&&k| !used[k]) {
            used[k] = true;
            let (a, b) = segments[k];
            cur = if a == cur { b } else { a };
            chain.push(cur);
        }
        if chain.len() > 1 {
            lines.push(chain.into_iter().map(point).collect());
        }
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::robin1d::RobinParam;

    #[test]
    fn vertical_line_of_odd_mode() {
        let f = ThetaFamily::single(RobinParam::Finite(1.0), 1, 0).unwrap();
        let lines = nodal_polylines(&f, 64).unwrap();
        assert_eq!(lines.len(), 1);
        assert!(lines[0].iter().all(|&(x, _)| x.abs() < 1e-12));
    }

    #[test]
    fn closed_loop_is_closed() {
        let f = ThetaFamily::new(RobinParam::DIRICHLET, PI / 4.0, 2, 0).unwrap();
        let lines = nodal_polylines(&f, 128).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].first(), lines[0].last());
    }
}
