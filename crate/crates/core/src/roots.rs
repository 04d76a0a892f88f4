//! Sign-change bracketing and bisection for real functions of one variable.

/// Brackets `(lo, hi)` around every sign change of `f` on a uniform grid of
/// `intervals` cells strictly inside `(a, b)`. Brackets are returned in
/// ascending order.
pub fn bracket_sign_changes<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> Vec<(f64, f64)> {
    let step = (b - a) / intervals as f64;
    let mut out = Vec::new();
    let mut x_prev = a + 0.5 * step;
    let mut f_prev = f(x_prev);
    for i in 1..intervals {
        let x = a + (i as f64 + 0.5) * step;
        let fx = f(x);
        if f_prev == 0.0 {
            out.push((x_prev, x_prev));
        } else if f_prev.signum() != fx.signum() && fx != 0.0 {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        out.push((x_prev, x_prev));
    }
    out
}

/// Bisects a sign-change bracket until the midpoint is no longer
/// representable between the endpoints, i.e. to the last bit of `f64`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
