//! Bracketed bisection.

/// Iteration cap for every threshold solve.
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `|f(x)|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Bisects `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Stops once the bracket is narrower than `x_tol` and `|f(mid)| <= f_tol`,
/// when the bracket can no longer be split in floating point, or after
/// [`MAX_ITERATIONS`]. Returns `None` if the endpoints share a sign.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64, f_tol: f64) -> Option<Root>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(Root {
            x: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_hi == 0.0 {
        return Some(Root {
            x: hi,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return None;
    }

    let mut mid = 0.5 * (lo + hi);
    let mut f_mid = f(mid);
    let mut iterations = 1;
    while iterations < MAX_ITERATIONS {
        if f_mid == 0.0 || (hi - lo <= x_tol && f_mid.abs() <= f_tol) {
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if next == lo || next == hi {
            break;
        }
        mid = next;
        f_mid = f(mid);
        iterations += 1;
    }
    Some(Root {
        x: mid,
        residual: f_mid.abs(),
        iterations,
    })
}
