//! Scalar bracketing helpers shared by the solvers.

/// Shrinks a sign-changing bracket `[lo, hi]` of `f` until it is narrower
/// than `width`, returning the final bracket. Exact zeros collapse it.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> (f64, f64) {
    let mut flo = f(lo);
    if flo == 0.0 {
        return (lo, lo);
    }
    if f(hi) == 0.0 {
        return (hi, hi);
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Bisection to `width` followed by safeguarded Newton iterations that stay
/// inside the final bracket. Stops once `|f| <= tol`.
pub(crate) fn bisect_newton<F, D>(f: F, df: D, lo: f64, hi: f64, width: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = bisect(&f, lo, hi, width);
    if lo == hi {
        return lo;
    }
    let flo_neg = f(lo) < 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..60 {
        let fx = f(x);
        if fx.abs() <= tol {
            break;
        }
        if (fx < 0.0) == flo_neg {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let mut next = x - fx / d;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if next == x {
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_brackets_sqrt2() {
        let (lo, hi) = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12);
        assert!(lo <= 2f64.sqrt() && 2f64.sqrt() <= hi);
        assert!(hi - lo <= 1e-12);
    }

    #[test]
    fn newton_polishes_to_tolerance() {
        let x = bisect_newton(|x| x.cos() - x, |x| -x.sin() - 1.0, 0.0, 1.0, 1e-3, 1e-15);
        assert!((x.cos() - x).abs() <= 1e-15);
    }

    #[test]
    fn exact_zero_endpoint() {
        assert_eq!(bisect(|x| x, 0.0, 1.0, 1e-9), (0.0, 0.0));
    }
}
