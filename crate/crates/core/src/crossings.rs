//! Crossings of eigenvalue curves `h ↦ λ_{p,q,h}`.
//!
//! Two curves meet at most once on `[0, ∞)`. The gap
//! `σ(h) = λ_a(h) - λ_b(h)` has the closed-form derivative
//! `σ'(h) = (2/π) Σ ±α_k²/a_k` with `a_k = hπ + α_k²/2 + h²π²/2`.

use serde::Serialize;

use crate::exec::Execution;
use crate::robin1d::{a_coefficient, AlphaSolver, RobinParam};
use crate::roots::{bisect, bisect_newton};
use crate::spectrum2d::{eigenvalue_with, ModeLabel};
use crate::{Error, Result};

use std::f64::consts::PI;

/// Ordered pair of distinct curves, each label stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CurvePair {
    pub a: ModeLabel,
    pub b: ModeLabel,
}

impl CurvePair {
    pub fn new(a: ModeLabel, b: ModeLabel) -> Result<Self> {
        let (a, b) = (a.canonical(), b.canonical());
        if a == b {
            return Err(Error::precondition(
                "CurvePair",
                format!("distinct labels after canonicalization, got {a} twice"),
            ));
        }
        Ok(CurvePair { a, b })
    }
}

impl std::fmt::Display for CurvePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingEvent {
    pub pair: CurvePair,
    pub h_star: f64,
    pub lambda_star: f64,
    /// Common sign of `σ'` on the certificate grid around `h_star`, or 0 if
    /// the samples disagree.
    pub monotone_certificate: i8,
}

/// Sampled check of which curve lies below on either side of a crossing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingReport {
    pub h_star: f64,
    /// The label whose indices enclose the other's.
    pub outer: ModeLabel,
    pub inner: ModeLabel,
    /// `(h, λ_outer - λ_inner)` for samples above `h_star`.
    pub after: Vec<(f64, f64)>,
    /// The same below `h_star`.
    pub before: Vec<(f64, f64)>,
    pub gap_at_crossing: f64,
}

impl OrderingReport {
    /// Outer curve below after the crossing and above before it.
    pub fn holds(&self) -> bool {
        self.after.iter().all(|&(_, d)| d < 0.0) && self.before.iter().all(|&(_, d)| d > 0.0)
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn interior(op: &'static str, h: f64) -> Result<RobinParam> {
    if h > 0.0 && h.is_finite() {
        Ok(RobinParam::Finite(h))
    } else {
        Err(Error::precondition(op, format!("0 < h < inf, got {h}")))
    }
}

/// Crossing computations with a configurable branch solver.
#[derive(Debug, Clone, Copy, Default)]
pub struct Curves {
    pub solver: AlphaSolver,
    pub exec: Execution,
}

impl Curves {
    pub fn new(solver: AlphaSolver, exec: Execution) -> Self {
        Curves { solver, exec }
    }

    pub fn lambda(&self, label: ModeLabel, h: RobinParam) -> f64 {
        eigenvalue_with(&self.solver, label, h).value
    }

    /// `λ_a(h) - λ_b(h)` for arbitrary labels; exact at `h ∈ {0, ∞}`.
    pub fn sigma_between(&self, a: ModeLabel, b: ModeLabel, h: RobinParam) -> f64 {
        self.lambda(a, h) - self.lambda(b, h)
    }

    pub fn sigma(&self, pair: &CurvePair, h: f64) -> Result<f64> {
        let h = interior("sigma", h)?;
        Ok(self.sigma_between(pair.a, pair.b, h))
    }

    /// `dλ/dh` for one label.
    pub fn lambda_prime(&self, label: ModeLabel, h: f64) -> Result<f64> {
        let hp = interior("lambda_prime", h)?;
        let term = |k: u32| {
            let a = self.solver.solve(k, hp).alpha;
            a * a / a_coefficient(h, a)
        };
        Ok(2.0 / PI * (term(label.p) + term(label.q)))
    }

    pub fn sigma_prime(&self, pair: &CurvePair, h: f64) -> Result<f64> {
        Ok(self.lambda_prime(pair.a, h)? - self.lambda_prime(pair.b, h)?)
    }

    /// The crossing of `pair` inside `[h_lo, h_hi]`, if `σ` changes sign.
    pub fn find_crossing(
        &self,
        pair: &CurvePair,
        h_lo: f64,
        h_hi: f64,
    ) -> Result<Option<CrossingEvent>> {
        if !(h_lo > 0.0 && h_lo < h_hi && h_hi.is_finite()) {
            return Err(Error::precondition(
                "find_crossing",
                format!("0 < h_lo < h_hi < inf, got [{h_lo}, {h_hi}]"),
            ));
        }
        let s = |h: f64| self.sigma_between(pair.a, pair.b, RobinParam::Finite(h));
        let (slo, shi) = (s(h_lo), s(h_hi));
        if slo != 0.0 && shi != 0.0 && (slo < 0.0) == (shi < 0.0) {
            return Ok(None);
        }
        let (a, b) = bisect(s, h_lo, h_hi, 1e-10);
        let mut h = 0.5 * (a + b);
        if a < b {
            let d = self.sigma_prime(pair, h)?;
            let step = h - s(h) / d;
            if step.is_finite() && step >= a && step <= b {
                h = step;
            }
        }
        let hp = RobinParam::Finite(h);
        let lambda_star = 0.5 * (self.lambda(pair.a, hp) + self.lambda(pair.b, hp));
        Ok(Some(CrossingEvent {
            pair: *pair,
            h_star: h,
            lambda_star,
            monotone_certificate: self.certificate(pair, h)?,
        }))
    }

    fn certificate(&self, pair: &CurvePair, h: f64) -> Result<i8> {
        let signs = log_grid(0.5 * h, 2.0 * h, 33)
            .into_iter()
            .map(|t| self.sigma_prime(pair, t).map(|d| d.signum() as i8))
            .collect::<Result<Vec<i8>>>()?;
        let first = signs[0];
        Ok(if first != 0 && signs.iter().all(|&s| s == first) {
            first
        } else {
            0
        })
    }

    /// Number of sign changes of `σ` on `n` log-spaced points of `[lo, hi]`.
    pub fn sign_changes(&self, pair: &CurvePair, lo: f64, hi: f64, n: usize) -> usize {
        let vals: Vec<f64> = log_grid(lo, hi, n)
            .into_iter()
            .map(|h| self.sigma_between(pair.a, pair.b, RobinParam::Finite(h)))
            .filter(|v| *v != 0.0)
            .collect();
        vals.windows(2)
            .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
            .count()
    }

    /// The unique `h` with `λ_label(h) = level`.
    pub fn threshold_h(&self, label: ModeLabel, level: f64) -> Result<f64> {
        let lo = label.neumann_value() as f64;
        let hi = label.dirichlet_value() as f64;
        if !(level > lo && level < hi) {
            return Err(Error::LevelOutOfRange { level, lo, hi });
        }
        let f = |h: f64| self.lambda(label, RobinParam::Finite(h)) - level;
        let mut top = 1.0;
        while f(top) < 0.0 {
            top *= 2.0;
            if top > 1e300 {
                return Err(Error::NoBracket { lo: 0.0, hi: top });
            }
        }
        if !self.solver.polish {
            let (a, b) = bisect(f, 0.0, top, 1e-12 * top);
            return Ok(0.5 * (a + b));
        }
        let df = |h: f64| self.lambda_prime(label, h).unwrap_or(f64::NAN);
        Ok(bisect_newton(f, df, 0.0, top, 1e-9 * top, 1e-13 * level))
    }

    /// Every crossing among `labels` inside `[h_lo, h_hi]`, sorted by `h`.
    pub fn multi_crossing_scan(
        &self,
        labels: &[ModeLabel],
        h_lo: f64,
        h_hi: f64,
    ) -> Result<Vec<CrossingEvent>> {
        if !(h_lo > 0.0 && h_lo < h_hi && h_hi.is_finite()) {
            return Err(Error::precondition(
                "multi_crossing_scan",
                format!("0 < h_lo < h_hi < inf, got [{h_lo}, {h_hi}]"),
            ));
        }
        let canon: Vec<ModeLabel> = labels.iter().map(|l| l.canonical()).collect();
        let mut pairs = Vec::new();
        for i in 0..canon.len() {
            for j in i + 1..canon.len() {
                pairs.push(CurvePair::new(canon[i], canon[j])?);
            }
        }
        let grid = log_grid(h_lo, h_hi, 512);
        let found = self.exec.map(&pairs, |pair| -> Result<Vec<CrossingEvent>> {
            let vals: Vec<f64> = grid
                .iter()
                .map(|&h| self.sigma_between(pair.a, pair.b, RobinParam::Finite(h)))
                .collect();
            let mut out = Vec::new();
            for k in 0..grid.len() - 1 {
                let (u, v) = (vals[k], vals[k + 1]);
                let change = (u < 0.0 && v >= 0.0) || (u > 0.0 && v <= 0.0);
                if change {
                    if let Some(e) = self.find_crossing(pair, grid[k], grid[k + 1])? {
                        out.push(e);
                    }
                }
            }
            Ok(out)
        });
        let mut events = Vec::new();
        for r in found {
            events.extend(r?);
        }
        events.sort_by(|x, y| x.h_star.total_cmp(&y.h_star));
        events.dedup_by(|x, y| x.pair == y.pair && (x.h_star - y.h_star).abs() < 1e-8);
        Ok(events)
    }

    /// Samples the curve order on both sides of a crossing.
    pub fn ordering_after_crossing(
        &self,
        event: &CrossingEvent,
        factors: &[f64],
    ) -> Result<OrderingReport> {
        let (a, b) = (event.pair.a, event.pair.b);
        let (outer, inner) = if a.p < b.p && b.q < a.q {
            (a, b)
        } else if b.p < a.p && a.q < b.q {
            (b, a)
        } else {
            return Err(Error::precondition(
                "ordering_after_crossing",
                format!("nested labels p < p' <= q' < q, got {a} and {b}"),
            ));
        };
        let gap = |h: f64| self.sigma_between(outer, inner, RobinParam::Finite(h));
        let h = event.h_star;
        Ok(OrderingReport {
            h_star: h,
            outer,
            inner,
            after: factors.iter().map(|&f| (h * f, gap(h * f))).collect(),
            before: factors.iter().map(|&f| (h / f, gap(h / f))).collect(),
            gap_at_crossing: gap(h),
        })
    }

    /// `λ` of each label at each `h`; rows follow `hs`.
    pub fn sample_curves(&self, labels: &[ModeLabel], hs: &[f64]) -> Vec<Vec<f64>> {
        self.exec.map(hs, |&h| {
            let hp = RobinParam::new(h).unwrap_or(RobinParam::DIRICHLET);
            labels.iter().map(|&l| self.lambda(l, hp)).collect()
        })
    }
}

pub fn sigma(pair: &CurvePair, h: f64) -> Result<f64> {
    Curves::default().sigma(pair, h)
}

pub fn sigma_prime(pair: &CurvePair, h: f64) -> Result<f64> {
    Curves::default().sigma_prime(pair, h)
}

pub fn find_crossing(pair: &CurvePair, h_lo: f64, h_hi: f64) -> Result<Option<CrossingEvent>> {
    Curves::default().find_crossing(pair, h_lo, h_hi)
}

pub fn threshold_h(label: ModeLabel, level: f64) -> Result<f64> {
    Curves::default().threshold_h(label, level)
}

pub fn multi_crossing_scan(
    labels: &[ModeLabel],
    h_lo: f64,
    h_hi: f64,
) -> Result<Vec<CrossingEvent>> {
    Curves::default().multi_crossing_scan(labels, h_lo, h_hi)
}

pub fn ordering_after_crossing(event: &CrossingEvent) -> Result<OrderingReport> {
    Curves::default().ordering_after_crossing(event, &[1.2, 3.0, 30.0])
}

/// Sign changes of `σ` on the 512-point log grid over `[1e-3, 1e3]`.
pub fn uniqueness_scan(pair: &CurvePair) -> usize {
    Curves::default().sign_changes(pair, 1e-3, 1e3, 512)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: (u32, u32), b: (u32, u32)) -> CurvePair {
        CurvePair::new(ModeLabel::new(a.0, a.1), ModeLabel::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn sigma_limits() {
        let c = Curves::default();
        let pr = pair((2, 2), (3, 0));
        assert_eq!(c.sigma_between(pr.a, pr.b, RobinParam::NEUMANN), -1.0);
        assert_eq!(c.sigma_between(pr.a, pr.b, RobinParam::DIRICHLET), 1.0);
        assert!((sigma(&pr, 1e-9).unwrap() + 1.0).abs() < 1e-6);
        assert!((sigma(&pr, 1e9).unwrap() - 1.0).abs() < 1e-6);
        assert!(sigma(&pr, 0.0).is_err());
    }

    #[test]
    fn symmetric_labels_do_not_form_a_pair() {
        assert!(CurvePair::new(ModeLabel::new(1, 3), ModeLabel::new(3, 1)).is_err());
        let c = Curves::default();
        let (a, b) = (ModeLabel::new(1, 3), ModeLabel::new(3, 1));
        assert_eq!(c.sigma_between(a, b, RobinParam::Finite(0.7)), 0.0);
        assert_eq!(
            c.lambda_prime(a, 0.7).unwrap(),
            c.lambda_prime(b, 0.7).unwrap()
        );
    }

    #[test]
    fn sigma_prime_matches_finite_difference() {
        for pr in [
            pair((2, 2), (3, 0)),
            pair((4, 3), (5, 1)),
            pair((0, 0), (1, 1)),
        ] {
            for &h in &[0.2, 1.0, 6.0] {
                let d = sigma_prime(&pr, h).unwrap();
                let s = 1e-5;
                let fd = (sigma(&pr, h + s).unwrap() - sigma(&pr, h - s).unwrap()) / (2.0 * s);
                assert!(((d - fd) / d).abs() < 1e-6, "{pr} h={h}: {d} {fd}");
            }
        }
    }

    #[test]
    fn nine_crossing() {
        let pr = pair((2, 2), (3, 0));
        let e = find_crossing(&pr, 0.1, 12.0).unwrap().unwrap();
        assert!((e.h_star - 1.6970).abs() < 2e-3, "{}", e.h_star);
        assert!((e.lambda_star - 11.4498).abs() < 2e-3, "{}", e.lambda_star);
        assert_ne!(e.monotone_certificate, 0);
        assert!(sigma(&pr, e.h_star).unwrap().abs() <= 1e-9 * e.lambda_star);
        assert_eq!(uniqueness_scan(&pr), 1);
    }

    #[test]
    fn no_crossing_for_ordered_pair() {
        let pr = pair((1, 1), (2, 0));
        assert!(find_crossing(&pr, 0.1, 100.0).unwrap().is_none());
        assert_eq!(Curves::default().sign_changes(&pr, 0.1, 100.0, 512), 0);
    }

    #[test]
    fn thresholds() {
        let t = threshold_h(ModeLabel::new(3, 1), 18.0).unwrap();
        assert!((t - 11.4225).abs() < 1e-3, "{t}");
        let t = threshold_h(ModeLabel::new(6, 2), 41.0).unwrap();
        assert!((t - 0.4016).abs() < 1e-3, "{t}");
        assert!(threshold_h(ModeLabel::new(3, 1), 10.0).is_err());
        assert!(threshold_h(ModeLabel::new(3, 1), 20.0).is_err());
        let lam = eigenvalue_with(
            &AlphaSolver::default(),
            ModeLabel::new(3, 1),
            RobinParam::Finite(t),
        );
        assert!(lam.value < 18.0 + 1e-9);
    }

    #[test]
    fn ordering_for_nine() {
        let pr = pair((2, 2), (3, 0));
        let e = find_crossing(&pr, 0.1, 12.0).unwrap().unwrap();
        let c = Curves::default();
        let rep = c
            .ordering_after_crossing(&e, &[2.0 / e.h_star, 5.0 / e.h_star, 50.0 / e.h_star])
            .unwrap();
        assert_eq!(rep.outer, ModeLabel::new(0, 3));
        assert!(rep.holds(), "{rep:?}");
        assert!(rep.gap_at_crossing.abs() < 1e-9);
    }

    #[test]
    fn empty_scan() {
        assert!(multi_crossing_scan(&[], 0.1, 10.0).unwrap().is_empty());
        let dup = [ModeLabel::new(1, 2), ModeLabel::new(2, 1)];
        assert!(multi_crossing_scan(&dup, 0.1, 10.0).is_err());
    }
}
